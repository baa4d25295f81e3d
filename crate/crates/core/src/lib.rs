//! Ordinal arithmetic in Cantor normal form below epsilon-zero, with
//! explicit, invertible bijections between ordinals built on top of it.
//!
//! ```
//! use ordinal_core::{Bijection, Ordinal, Point};
//!
//! let w = Ordinal::omega();
//! assert_eq!(&Ordinal::nat(3u32) + &w, w);
//!
//! let j = Bijection::pairing(&w).unwrap();
//! let z = j.forward(&Point::ord_pair(2u64.into(), 3u64.into())).unwrap();
//! assert_eq!(z, Point::Ord(18u64.into()));
//! ```

pub mod bij;
pub mod cli;
pub mod error;
pub mod fin_support;
pub mod oracle;
pub mod ordinal;
pub mod seq_inj;

pub use bij::{Bijection, Direction, Domain, Point, TraceLine};
pub use error::{Error, Result};
pub use fin_support::{cnf_eval, cnf_inv, lift_index, lift_value, FinSuppFn};
pub use ordinal::{Classification, Kind, Ordinal, Term};
pub use seq_inj::{seq_decode, seq_encode, OrdSequence, SeqCodec};
