//! Ordinals below ε₀ in hereditary Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of terms `ω^e·k` with strictly decreasing
//! exponents `e` (themselves ordinals) and positive natural coefficients `k`.
//! Normal forms are unique, so equality is structural and the derived
//! lexicographic order on term lists is the ordinal order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A single `ω^exponent · coefficient` summand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: BigUint,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Zero,
    Successor,
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub kind: Kind,
    pub finite: bool,
}

impl Ordinal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::nat(1u32)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// The finite ordinal `n`.
    pub fn nat(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Self::zero()
        } else {
            Self::monomial(Self::zero(), n)
        }
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Self::monomial(exponent, BigUint::one())
    }

    /// `ω^exponent · coefficient`; zero when the coefficient is zero.
    pub fn monomial(exponent: Ordinal, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from raw `(exponent, coefficient)` pairs, rejecting
    /// anything that is not already in normal form.
    pub fn make(terms: Vec<(Ordinal, BigUint)>) -> Result<Self> {
        for (i, (exponent, coefficient)) in terms.iter().enumerate() {
            if coefficient.is_zero() {
                return Err(Error::MalformedCnf(format!(
                    "term {i} (exponent {exponent}) has coefficient 0"
                )));
            }
            if i > 0 && terms[i - 1].0 <= *exponent {
                return Err(Error::MalformedCnf(format!(
                    "exponent {exponent} of term {i} does not decrease from {}",
                    terms[i - 1].0
                )));
            }
        }
        Ok(Self {
            terms: terms
                .into_iter()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        })
    }

    fn from_terms(terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coefficient.is_zero()));
        debug_assert!(terms.windows(2).all(|w| w[0].exponent > w[1].exponent));
        Self { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_natural().is_some() || self.is_zero()
    }

    /// The natural number this ordinal denotes, if it is a nonzero finite ordinal.
    pub fn as_natural(&self) -> Option<&BigUint> {
        match self.terms.as_slice() {
            [t] if t.exponent.is_zero() => Some(&t.coefficient),
            _ => None,
        }
    }

    /// The natural number this ordinal denotes, including zero.
    pub fn to_natural(&self) -> Option<BigUint> {
        if self.is_zero() {
            Some(BigUint::zero())
        } else {
            self.as_natural().cloned()
        }
    }

    pub fn classify(&self) -> Classification {
        let kind = match self.terms.last() {
            None => Kind::Zero,
            Some(t) if t.exponent.is_zero() => Kind::Successor,
            Some(_) => Kind::Limit,
        };
        Classification {
            kind,
            finite: self.is_finite(),
        }
    }

    /// Head exponent, head coefficient and the remaining tail: `self = ω^β₁·k₁ + ρ`.
    pub fn leading(&self) -> Result<(Ordinal, BigUint, Ordinal)> {
        let (head, tail) = self.terms.split_first().ok_or(Error::ZeroOrdinal)?;
        Ok((
            head.exponent.clone(),
            head.coefficient.clone(),
            Self::from_terms(tail.to_vec()),
        ))
    }

    fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn succ(&self) -> Ordinal {
        self + &Ordinal::one()
    }

    pub fn predecessor(&self) -> Option<Ordinal> {
        let last = self.terms.last()?;
        if !last.exponent.is_zero() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        last.coefficient -= 1u32;
        if last.coefficient.is_zero() {
            terms.pop();
        }
        Some(Self::from_terms(terms))
    }

    fn plus(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = rhs.terms.as_slice();
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient: &t.coefficient + &lead.coefficient,
                    });
                    rest = &rhs.terms[1..];
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend_from_slice(rest);
        Self::from_terms(terms)
    }

    fn times(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = self.leading_exponent() else {
            return Ordinal::zero();
        };
        let mut terms = Vec::new();
        for t in &rhs.terms {
            if t.exponent.is_zero() {
                // (ω^a₁·c₁ + rest)·k = ω^a₁·(c₁k) + rest
                let mut head = self.terms[0].clone();
                head.coefficient *= &t.coefficient;
                terms.push(head);
                terms.extend_from_slice(&self.terms[1..]);
            } else {
                terms.push(Term {
                    exponent: lead + &t.exponent,
                    coefficient: t.coefficient.clone(),
                });
            }
        }
        Self::from_terms(terms)
    }

    /// Splits into the part with positive exponents and the finite tail.
    fn split_finite(&self) -> (Ordinal, BigUint) {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => (
                Self::from_terms(self.terms[..self.terms.len() - 1].to_vec()),
                t.coefficient.clone(),
            ),
            _ => (self.clone(), BigUint::zero()),
        }
    }

    /// Ordinal exponentiation `self^exponent`.
    ///
    /// # Panics
    ///
    /// When a finite power in the result is too large to materialize; use
    /// [`Ordinal::checked_pow`] to get `None` instead.
    pub fn pow(&self, exponent: &Ordinal) -> Ordinal {
        self.checked_pow(exponent)
            .expect("finite part of ordinal power too large to represent")
    }

    pub fn checked_pow(&self, exponent: &Ordinal) -> Option<Ordinal> {
        if exponent.is_zero() {
            return Some(Ordinal::one());
        }
        if self.is_zero() {
            return Some(Ordinal::zero());
        }
        let (infinite, n) = exponent.split_finite();
        if let Some(m) = self.as_natural() {
            if m.is_one() {
                return Some(Ordinal::one());
            }
            // m^(ω·L + n) = ω^L · m^n
            let log = Self::from_terms(
                infinite
                    .terms
                    .iter()
                    .map(|t| Term {
                        exponent: Ordinal::one()
                            .sub_left(&t.exponent)
                            .expect("positive exponent"),
                        coefficient: t.coefficient.clone(),
                    })
                    .collect(),
            );
            let finite = m.pow(n.to_u32()?);
            return Some(Ordinal::monomial(log, finite));
        }
        // (ω^a₁·c₁ + …)^(ω·L + n) = ω^(a₁·ω·L) · self^n
        let lead = self.leading_exponent().unwrap();
        let head = Ordinal::omega_pow(lead * &infinite);
        Some(&head * &self.pow_nat(n.to_u64()?))
    }

    fn pow_nat(&self, mut n: u64) -> Ordinal {
        let mut acc = Ordinal::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The unique `γ` with `self + γ = target`.
    pub fn sub_left(&self, target: &Ordinal) -> Result<Ordinal> {
        let underflow = || Error::Underflow {
            subtrahend: self.to_string(),
            minuend: target.to_string(),
        };
        for (i, x) in self.terms.iter().enumerate() {
            let Some(y) = target.terms.get(i) else {
                return Err(underflow());
            };
            if x == y {
                continue;
            }
            return match x.exponent.cmp(&y.exponent) {
                Ordering::Less => Ok(Self::from_terms(target.terms[i..].to_vec())),
                Ordering::Greater => Err(underflow()),
                Ordering::Equal if x.coefficient < y.coefficient => {
                    let mut terms = vec![Term {
                        exponent: y.exponent.clone(),
                        coefficient: &y.coefficient - &x.coefficient,
                    }];
                    terms.extend_from_slice(&target.terms[i + 1..]);
                    Ok(Self::from_terms(terms))
                }
                Ordering::Equal => Err(underflow()),
            };
        }
        Ok(Self::from_terms(target.terms[self.terms.len()..].to_vec()))
    }

    /// Left division with remainder: `self = divisor·q + r` with `r < divisor`.
    pub fn div_rem(&self, divisor: &Ordinal) -> Result<(Ordinal, Ordinal)> {
        let (lead, lead_coefficient) = match divisor.terms.first() {
            Some(t) => (&t.exponent, &t.coefficient),
            None => return Err(Error::DivisionByZero),
        };
        if self < divisor {
            return Ok((Ordinal::zero(), self.clone()));
        }
        // Terms of self above the divisor's leading exponent come from
        // divisor·ω^δ = ω^(a₁+δ); what remains is divisor·m + r.
        let split = self
            .terms
            .iter()
            .position(|t| t.exponent <= *lead)
            .unwrap_or(self.terms.len());
        let mut quotient: Vec<Term> = self.terms[..split]
            .iter()
            .map(|t| Term {
                exponent: lead.sub_left(&t.exponent).expect("exponent above lead"),
                coefficient: t.coefficient.clone(),
            })
            .collect();
        let low = Self::from_terms(self.terms[split..].to_vec());
        let mut m = match low.terms.first() {
            Some(t) if t.exponent == *lead => &t.coefficient / lead_coefficient,
            _ => BigUint::zero(),
        };
        let mut product = divisor * &Ordinal::nat(m.clone());
        if product > low {
            m -= 1u32;
            product = divisor * &Ordinal::nat(m.clone());
        }
        let remainder = product.sub_left(&low)?;
        if !m.is_zero() {
            quotient.push(Term {
                exponent: Ordinal::zero(),
                coefficient: m,
            });
        }
        Ok((Self::from_terms(quotient), remainder))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.terms.iter().zip(&other.terms) {
            let ord = x
                .exponent
                .cmp(&y.exponent)
                .then_with(|| x.coefficient.cmp(&y.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.plus(rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        self.plus(&rhs)
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: &Ordinal) -> Ordinal {
        self.times(rhs)
    }
}

impl Mul for Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: Ordinal) -> Ordinal {
        self.times(&rhs)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::print_canonical(self))
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^({})*{}", self.exponent, self.coefficient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::PolyOrdinal;

    fn n(k: u64) -> Ordinal {
        Ordinal::nat(k)
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    /// Ordinal below ω^ω from little-endian coefficients, built through the oracle.
    fn poly(coeffs: &[u128]) -> Ordinal {
        PolyOrdinal::new(coeffs.to_vec()).to_ordinal()
    }

    #[test]
    fn make_accepts_normal_forms() {
        assert_eq!(Ordinal::make(vec![]).unwrap(), Ordinal::zero());
        let x = Ordinal::make(vec![(n(1), 2u32.into()), (n(0), 3u32.into())]).unwrap();
        assert_eq!(x, poly(&[3, 2]));
    }

    #[test]
    fn make_rejects_malformed() {
        let err = Ordinal::make(vec![(n(0), 3u32.into()), (n(1), 2u32.into())]);
        assert!(matches!(err, Err(Error::MalformedCnf(_))));
        let err = Ordinal::make(vec![(n(1), 0u32.into())]);
        assert!(matches!(err, Err(Error::MalformedCnf(_))));
        let err = Ordinal::make(vec![(n(1), 1u32.into()), (n(1), 1u32.into())]);
        assert!(matches!(err, Err(Error::MalformedCnf(_))));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(poly(&[1, 2]).cmp(&poly(&[1, 2])), Ordering::Equal);
        assert_eq!(w().cmp(&n(3)), Ordering::Greater);
        // oracle: [0,0,1] vs [3,5]
        let expected = PolyOrdinal::new(vec![0, 0, 1]).cmp(&PolyOrdinal::new(vec![3, 5]));
        assert_eq!(expected, Ordering::Greater);
        assert_eq!(poly(&[0, 0, 1]).cmp(&poly(&[3, 5])), expected);
    }

    #[test]
    fn add_examples() {
        let beta = poly(&[4, 0, 7]);
        assert_eq!(&Ordinal::zero() + &beta, beta);
        assert_eq!(&n(3) + &w(), w());
        // ω²+ω + ω+3 = ω²+ω·2+3
        assert_eq!(&poly(&[0, 1, 1]) + &poly(&[3, 1]), poly(&[3, 2, 1]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&poly(&[2, 3]) * &Ordinal::zero(), Ordinal::zero());
        assert_eq!(&n(2) * &w(), w());
        assert_eq!(&w().succ() * &w(), poly(&[0, 0, 1]));
        assert_eq!(&w() * &n(2), poly(&[0, 2]));
        assert_eq!(&n(2) * &n(3), n(6));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(poly(&[1, 1]).pow(&Ordinal::zero()), n(1));
        assert_eq!(n(2).pow(&w()), w());
        let w2 = w().pow(&n(2));
        assert_eq!(w2, poly(&[0, 0, 1]));
        assert_eq!(w2.pow(&w()), Ordinal::omega_pow(w()));
        assert_eq!(n(2).pow(&n(10)), n(1024));
        assert_eq!(n(0).pow(&n(3)), n(0));
        assert_eq!(n(0).pow(&n(0)), n(1));
        // (ω+1)^2 = ω²+ω+1
        assert_eq!(poly(&[1, 1]).pow(&n(2)), poly(&[1, 1, 1]));
        // 2^(ω+3) = ω·8
        assert_eq!(n(2).pow(&poly(&[3, 1])), poly(&[0, 8]));
        // ω^ω · ω^ω... (ω+1)^ω = ω^ω
        assert_eq!(poly(&[1, 1]).pow(&w()), Ordinal::omega_pow(w()));
    }

    #[test]
    fn checked_pow_reports_overflow() {
        let huge = Ordinal::nat(BigUint::from(u64::MAX));
        assert!(n(2).checked_pow(&huge).is_none());
        // the limit part alone never overflows
        assert!(n(2).checked_pow(&Ordinal::omega_pow(huge)).is_some());
    }

    #[test]
    fn sub_left_examples() {
        let beta = poly(&[1, 4, 2]);
        assert_eq!(beta.sub_left(&beta).unwrap(), Ordinal::zero());
        assert_eq!(w().sub_left(&poly(&[5, 1])).unwrap(), n(5));
        assert_eq!(n(3).sub_left(&w()).unwrap(), w());
        assert_eq!(&n(3) + &w(), w());
        assert!(matches!(w().sub_left(&n(3)), Err(Error::Underflow { .. })));
        assert!(matches!(
            poly(&[0, 2]).sub_left(&poly(&[5, 1])),
            Err(Error::Underflow { .. })
        ));
    }

    #[test]
    fn div_rem_examples() {
        let z = poly(&[5, 3, 2]);
        assert_eq!(z.div_rem(&n(1)).unwrap(), (z.clone(), Ordinal::zero()));
        assert_eq!(n(5).div_rem(&w()).unwrap(), (Ordinal::zero(), n(5)));
        assert_eq!(poly(&[5, 3]).div_rem(&w()).unwrap(), (n(3), n(5)));
        assert_eq!(z.div_rem(&Ordinal::zero()), Err(Error::DivisionByZero));
        // 3·(ω+1) + 2 = ω+5
        assert_eq!(poly(&[5, 1]).div_rem(&n(3)).unwrap(), (poly(&[1, 1]), n(2)));
    }

    #[test]
    fn div_rem_needs_decrement() {
        // (ω+5)·2 = ω·2+5 > ω·2+3, so the quotient digit drops to 1.
        let a = poly(&[5, 1]);
        let z = poly(&[3, 2]);
        let (q, r) = z.div_rem(&a).unwrap();
        assert_eq!(q, n(1));
        assert_eq!(r, poly(&[3, 1]));
        assert_eq!(&(&a * &q) + &r, z);
    }

    #[test]
    fn leading_examples() {
        assert_eq!(n(7).leading().unwrap(), (n(0), 7u32.into(), n(0)));
        assert_eq!(poly(&[3, 2]).leading().unwrap(), (n(1), 2u32.into(), n(3)));
        let x = &Ordinal::monomial(w(), 3u32) + &poly(&[0, 0, 1]);
        assert_eq!(x.leading().unwrap(), (w(), 3u32.into(), poly(&[0, 0, 1])));
        assert_eq!(Ordinal::zero().leading(), Err(Error::ZeroOrdinal));
    }

    #[test]
    fn classify_examples() {
        let c = Ordinal::zero().classify();
        assert_eq!((c.kind, c.finite), (Kind::Zero, true));
        let c = w().succ().classify();
        assert_eq!((c.kind, c.finite), (Kind::Successor, false));
        let c = poly(&[0, 0, 3]).classify();
        assert_eq!((c.kind, c.finite), (Kind::Limit, false));
        let c = n(4).classify();
        assert_eq!((c.kind, c.finite), (Kind::Successor, true));
    }

    #[test]
    fn predecessor_of_successors_only() {
        assert_eq!(poly(&[1, 1]).predecessor(), Some(w()));
        assert_eq!(n(1).predecessor(), Some(Ordinal::zero()));
        assert_eq!(w().predecessor(), None);
        assert_eq!(Ordinal::zero().predecessor(), None);
    }

    #[test]
    fn absorption_anchor() {
        // k·ω^β = ω^β for finite k ≥ 1 and β ≥ 1
        for k in 1..=20u64 {
            for beta in [n(1), n(3), w(), poly(&[2, 1])] {
                let p = Ordinal::omega_pow(beta);
                assert_eq!(&n(k) * &p, p);
            }
        }
    }
}
