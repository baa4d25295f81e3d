//! Injection of finite sequences over `β` into `β`, for `β ≥ ω`.
//!
//! With `J = pairing(β)` and the natural numbers embedded as themselves,
//! a sequence `x₀ … x_{n-1}` is folded as `f₀ = 0`, `f_{i+1} = J(f_i, x_i)`
//! and tagged with its length: `code = J(n, f_n)`.

use num_traits::{ToPrimitive, Zero};

use crate::bij::{Bijection, Direction, Point, TraceLine};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Decoding refuses to materialize sequences longer than this.
pub const MAX_DECODE_LEN: usize = 1 << 16;

/// A finite sequence of ordinals, all below `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdSequence {
    bound: Ordinal,
    items: Vec<Ordinal>,
}

impl OrdSequence {
    pub fn new(bound: Ordinal, items: Vec<Ordinal>) -> Result<Self> {
        if let Some(bad) = items.iter().find(|x| **x >= bound) {
            return Err(Error::OutOfRange {
                value: bad.to_string(),
                bound: bound.to_string(),
            });
        }
        Ok(Self { bound, items })
    }

    pub fn bound(&self) -> &Ordinal {
        &self.bound
    }

    pub fn items(&self) -> &[Ordinal] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Encoder/decoder for one fixed `β`, holding its pairing bijection.
#[derive(Clone, Debug)]
pub struct SeqCodec {
    bound: Ordinal,
    pairing: Bijection,
}

impl SeqCodec {
    pub fn new(bound: &Ordinal) -> Result<Self> {
        Ok(Self {
            bound: bound.clone(),
            pairing: Bijection::pairing(bound)?,
        })
    }

    pub fn bound(&self) -> &Ordinal {
        &self.bound
    }

    pub fn pairing(&self) -> &Bijection {
        &self.pairing
    }

    fn pair(
        &self,
        x: &Ordinal,
        y: &Ordinal,
        trace: Option<&mut Vec<TraceLine>>,
    ) -> Result<Ordinal> {
        let point = Point::ord_pair(x.clone(), y.clone());
        let out = self.pairing.apply(Direction::Forward, &point, trace)?;
        Ok(out.into_ord().expect("pairing lands in an ordinal"))
    }

    fn unpair(
        &self,
        z: &Ordinal,
        trace: Option<&mut Vec<TraceLine>>,
    ) -> Result<(Ordinal, Ordinal)> {
        let out = self
            .pairing
            .apply(Direction::Backward, &Point::Ord(z.clone()), trace)?;
        Ok(out.into_ord_pair().expect("pairing splits into a pair"))
    }

    pub fn encode(&self, seq: &OrdSequence) -> Result<Ordinal> {
        self.encode_traced(seq, None)
    }

    pub fn encode_traced(
        &self,
        seq: &OrdSequence,
        mut trace: Option<&mut Vec<TraceLine>>,
    ) -> Result<Ordinal> {
        if seq.bound != self.bound {
            return Err(Error::BoundMismatch {
                expected: self.bound.to_string(),
                found: seq.bound.to_string(),
            });
        }
        let mut folded = Ordinal::zero();
        for x in &seq.items {
            folded = self.pair(&folded, x, trace.as_deref_mut())?;
        }
        let length = Ordinal::nat(seq.items.len() as u64);
        self.pair(&length, &folded, trace)
    }

    /// The sequence whose code is `z`, or `None` when `z` is not a code.
    pub fn decode(&self, z: &Ordinal) -> Result<Option<OrdSequence>> {
        self.decode_traced(z, None)
    }

    pub fn decode_traced(
        &self,
        z: &Ordinal,
        mut trace: Option<&mut Vec<TraceLine>>,
    ) -> Result<Option<OrdSequence>> {
        let (length, mut folded) = self.unpair(z, trace.as_deref_mut())?;
        let Some(length) = length.to_natural() else {
            return Ok(None);
        };
        let mut remaining = length.clone();
        let mut items = Vec::new();
        while !remaining.is_zero() {
            let (prefix, last) = self.unpair(&folded, trace.as_deref_mut())?;
            if prefix == folded {
                // Fixed point: every remaining step yields `last` again.
                if !folded.is_zero() {
                    return Ok(None);
                }
                let rest = remaining
                    .to_usize()
                    .filter(|r| items.len() + r <= MAX_DECODE_LEN)
                    .ok_or_else(|| Error::SequenceTooLong(length.to_string()))?;
                items.extend(std::iter::repeat_n(last, rest));
                break;
            }
            items.push(last);
            folded = prefix;
            remaining -= 1u32;
            if items.len() > MAX_DECODE_LEN && !remaining.is_zero() {
                return Err(Error::SequenceTooLong(length.to_string()));
            }
        }
        if !folded.is_zero() {
            return Ok(None);
        }
        items.reverse();
        let seq = OrdSequence::new(self.bound.clone(), items)?;
        if self.encode(&seq)? != *z {
            return Ok(None);
        }
        Ok(Some(seq))
    }
}

pub fn seq_encode(bound: &Ordinal, seq: &OrdSequence) -> Result<Ordinal> {
    SeqCodec::new(bound)?.encode(seq)
}

pub fn seq_decode(bound: &Ordinal, z: &Ordinal) -> Result<Option<OrdSequence>> {
    SeqCodec::new(bound)?.decode(z)
}
