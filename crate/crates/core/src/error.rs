use thiserror::Error;

/// Everything that can go wrong when building or evaluating ordinals,
/// finitely supported functions and bijections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Cantor normal form: {0}")]
    MalformedCnf(String),
    #[error("left subtraction underflow: {minuend} is smaller than {subtrahend}")]
    Underflow { subtrahend: String, minuend: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero ordinal")]
    ZeroOrdinal,
    #[error("{value} is not below {bound}")]
    OutOfRange { value: String, bound: String },
    #[error("base of an ordinal exponential must be nonzero")]
    BadBase,
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("value bijection does not fix zero (0 maps to {0})")]
    ZeroNotFixed(String),
    #[error("cast between unequal ordinals {from} and {to}")]
    CastUnequal { from: String, to: String },
    #[error("point {point} is not in domain {domain}")]
    PointOutOfDomain { point: String, domain: String },
    #[error("{0} is below omega")]
    TooSmall(String),
    #[error("sequence bound {found} does not match {expected}")]
    BoundMismatch { expected: String, found: String },
    #[error("result too large to represent: {0}")]
    Overflow(String),
    #[error("decoded sequence length {0} exceeds the decoder limit")]
    SequenceTooLong(String),
    #[error("{0} is not in the image")]
    NotInImage(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
