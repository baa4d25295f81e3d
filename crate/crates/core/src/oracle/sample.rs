//! Deterministic samplers for ordinals, ordinals below a bound, and points of
//! a [`Domain`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bij::{Domain, Point};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Samples per property.
    pub count: usize,
    /// Exponents that [`Sampler::ordinal`] draws from.
    pub exponent_pool: Vec<Ordinal>,
    pub max_coefficient: u64,
    pub max_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("exponent pool is empty")]
    EmptyPool,
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error("max coefficient must be at least 1")]
    ZeroCoefficient,
}

impl SampleConfig {
    /// Ordinals below ω^5 with coefficients up to 20.
    pub fn new(seed: u64, count: usize) -> Self {
        Self {
            seed,
            count,
            exponent_pool: (0..5u64).map(Ordinal::nat).collect(),
            max_coefficient: 20,
            max_terms: 4,
        }
    }

    pub fn with_pool(mut self, pool: Vec<Ordinal>) -> Self {
        self.exponent_pool = pool;
        self
    }

    pub fn with_max_coefficient(mut self, max: u64) -> Self {
        self.max_coefficient = max;
        self
    }

    pub fn with_max_terms(mut self, max: usize) -> Self {
        self.max_terms = max;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.exponent_pool.is_empty() {
            return Err(ConfigError::EmptyPool);
        }
        if self.count == 0 {
            return Err(ConfigError::ZeroCount);
        }
        if self.max_coefficient == 0 {
            return Err(ConfigError::ZeroCoefficient);
        }
        Ok(())
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self::new(0x5eed, 200)
    }
}

/// Small points every sampler below `bound` should hit: 0, 1, ω and the
/// immediate predecessors of `bound`, when they lie below it.
pub fn edge_points(bound: &Ordinal) -> Vec<Ordinal> {
    let mut points = vec![Ordinal::zero(), Ordinal::one(), Ordinal::omega()];
    let mut p = bound.clone();
    for _ in 0..3 {
        match p.predecessor() {
            Some(q) => {
                points.push(q.clone());
                p = q;
            }
            None => break,
        }
    }
    points.retain(|x| x < bound);
    points.sort();
    points.dedup();
    points
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pool: Vec<Ordinal>,
    max_coefficient: u64,
    max_terms: usize,
}

impl Sampler {
    pub fn new(cfg: &SampleConfig) -> Result<Self, ConfigError> {
        Self::with_stream(cfg, 0)
    }

    /// An independent stream for the same seed.
    pub fn with_stream(cfg: &SampleConfig, stream: u64) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Ok(Self {
            rng,
            pool: cfg.exponent_pool.clone(),
            max_coefficient: cfg.max_coefficient,
            max_terms: cfg.max_terms,
        })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coefficient(&mut self) -> u64 {
        self.rng.gen_range(1..=self.max_coefficient)
    }

    /// Up to `max_terms` distinct exponents from the pool, each with a
    /// coefficient in `1..=max_coefficient`.
    pub fn ordinal(&mut self) -> Ordinal {
        let t = self.rng.gen_range(0..=self.max_terms);
        let mut exponents: Vec<Ordinal> = (0..t)
            .map(|_| self.pool[self.rng.gen_range(0..self.pool.len())].clone())
            .collect();
        self.assemble(&mut exponents)
    }

    /// A nonzero [`Sampler::ordinal`].
    pub fn nonzero_ordinal(&mut self) -> Ordinal {
        loop {
            let x = self.ordinal();
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn assemble(&mut self, exponents: &mut Vec<Ordinal>) -> Ordinal {
        exponents.sort_by(|a, b| b.cmp(a));
        exponents.dedup();
        let terms = exponents
            .drain(..)
            .map(|e| (e, self.coefficient().into()))
            .collect();
        Ordinal::make(terms).expect("sorted distinct exponents")
    }

    /// An ordinal strictly below `bound`, which must be nonzero.
    ///
    /// Occasionally returns an edge point; otherwise keeps a prefix of the
    /// bound's normal form, lowers the next coefficient, and fills the rest
    /// with a random tail below that term's power of ω.
    pub fn below(&mut self, bound: &Ordinal) -> Ordinal {
        assert!(!bound.is_zero(), "nothing lies below 0");
        if self.rng.gen_ratio(1, 8) {
            let edges = edge_points(bound);
            return edges[self.rng.gen_range(0..edges.len())].clone();
        }
        let terms = bound.terms();
        let at = self.rng.gen_range(0..terms.len());
        let mut prefix: Vec<(Ordinal, num_bigint::BigUint)> = terms[..at]
            .iter()
            .map(|t| (t.exponent().clone(), t.coefficient().clone()))
            .collect();
        let pivot = &terms[at];
        let lowered = self.below_natural(pivot.coefficient());
        if lowered != 0u32.into() {
            prefix.push((pivot.exponent().clone(), lowered));
        }
        let head = Ordinal::make(prefix).expect("prefix of a normal form");
        let tail = self.below_omega_pow(pivot.exponent());
        let x = &head + &tail;
        debug_assert!(x < *bound, "{x} sampled below {bound}");
        x
    }

    fn below_natural(&mut self, n: &num_bigint::BigUint) -> num_bigint::BigUint {
        use num_bigint::RandBigInt;
        self.rng.gen_biguint_below(n)
    }

    fn below_omega_pow(&mut self, exponent: &Ordinal) -> Ordinal {
        if exponent.is_zero() {
            return Ordinal::zero();
        }
        let t = self.rng.gen_range(0..=self.max_terms);
        let mut exponents: Vec<Ordinal> = (0..t).map(|_| self.below(exponent)).collect();
        self.assemble(&mut exponents)
    }

    pub fn point(&mut self, domain: &Domain) -> Point {
        match domain {
            Domain::Ord(bound) => Point::Ord(self.below(bound)),
            Domain::Prod(l, r) => {
                let l = self.point(l);
                Point::pair(l, self.point(r))
            }
        }
    }
}

pub fn sample_ordinal(cfg: &SampleConfig) -> Result<Ordinal, ConfigError> {
    Ok(Sampler::new(cfg)?.ordinal())
}

pub fn sample_point(domain: &Domain, cfg: &SampleConfig) -> Result<Point, ConfigError> {
    Ok(Sampler::new(cfg)?.point(domain))
}
