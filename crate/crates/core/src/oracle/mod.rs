//! An independent arithmetic engine below ω^ω, deterministic samplers, and
//! the property harness built on them.

pub mod harness;
pub mod poly;
pub mod sample;

pub use harness::{
    run_differential, run_differential_with, run_property_suite, run_property_suite_with, ArithOps,
    PropertyResult, Report,
};
pub use poly::{poly_add, poly_cmp, poly_mul, PolyOrdinal};
pub use sample::{sample_ordinal, sample_point, ConfigError, SampleConfig, Sampler};
