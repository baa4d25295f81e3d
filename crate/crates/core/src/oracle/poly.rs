//! Ordinals below ω^ω as little-endian coefficient vectors.
//!
//! A separate engine: it never calls into [`crate::ordinal`] arithmetic, only
//! into the conversions at the boundary.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::ordinal::Ordinal;

/// `coeffs[i]` is the coefficient of `ω^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyOrdinal {
    coeffs: Vec<u128>,
}

impl PolyOrdinal {
    pub fn new(mut coeffs: Vec<u128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Position of the leading coefficient; `None` for zero.
    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `None` when the ordinal is not below ω^ω or a coefficient is too wide.
    pub fn from_ordinal(x: &Ordinal) -> Option<Self> {
        let mut coeffs = Vec::new();
        for term in x.terms() {
            let position = term.exponent().to_natural()?.to_usize()?;
            if coeffs.len() <= position {
                coeffs.resize(position + 1, 0);
            }
            coeffs[position] = term.coefficient().to_u128()?;
        }
        Some(Self::new(coeffs))
    }

    pub fn to_ordinal(&self) -> Ordinal {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (Ordinal::nat(i as u64), BigUint::from(*c)))
            .collect();
        Ordinal::make(terms).expect("coefficient vector is a normal form")
    }
}

/// Highest differing position decides.
pub fn poly_cmp(a: &PolyOrdinal, b: &PolyOrdinal) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// Everything in `a` below the degree of `b` is swallowed.
pub fn poly_add(a: &PolyOrdinal, b: &PolyOrdinal) -> PolyOrdinal {
    let Some(d) = b.degree() else {
        return a.clone();
    };
    let width = a.coeffs.len().max(b.coeffs.len());
    let mut out = vec![0u128; width];
    for (i, slot) in out.iter_mut().enumerate() {
        let from_a = a.coeffs.get(i).copied().unwrap_or(0);
        let from_b = b.coeffs.get(i).copied().unwrap_or(0);
        *slot = match i.cmp(&d) {
            Ordering::Less => from_b,
            Ordering::Equal => from_a.checked_add(from_b).expect("oracle overflow"),
            Ordering::Greater => from_a,
        };
    }
    PolyOrdinal::new(out)
}

/// Right distribution over `b`: each `ω^i·k` with `i ≥ 1` becomes
/// `ω^(deg a + i)·k`; the finite part `k` scales only the leading coefficient.
pub fn poly_mul(a: &PolyOrdinal, b: &PolyOrdinal) -> PolyOrdinal {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return PolyOrdinal::default();
    };
    let mut out = vec![0u128; da + db + 1];
    out[da + 1..].copy_from_slice(&b.coeffs[1..]);
    let k = b.coeffs[0];
    if k != 0 {
        out[..=da].copy_from_slice(&a.coeffs);
        out[da] = a.coeffs[da].checked_mul(k).expect("oracle overflow");
    }
    PolyOrdinal::new(out)
}

impl Ord for PolyOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        poly_cmp(self, other)
    }
}

impl PartialOrd for PolyOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PolyOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u128]) -> PolyOrdinal {
        PolyOrdinal::new(c.to_vec())
    }

    #[test]
    fn small_cases() {
        assert_eq!(poly_add(&p(&[3]), &p(&[0, 1])), p(&[0, 1]));
        assert_eq!(poly_mul(&p(&[0, 1]), &p(&[2])), p(&[0, 2]));
        assert_eq!(poly_cmp(&p(&[5]), &p(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 0, 0]).coeffs(), &[1]);
        assert!(p(&[0, 0]).is_zero());
    }

    /// Ordinals below ω·5+5 written as (m, n) = ω·m + n, against arithmetic
    /// worked out by hand on that pair form.
    #[test]
    fn degree_one_table() {
        fn hand_add((m1, n1): (u128, u128), (m2, n2): (u128, u128)) -> (u128, u128) {
            if m2 == 0 {
                (m1, n1 + n2)
            } else {
                (m1 + m2, n2)
            }
        }
        fn hand_cmp(a: (u128, u128), b: (u128, u128)) -> Ordering {
            a.cmp(&b)
        }
        let mut points = Vec::new();
        for m in 0..=5u128 {
            for n in 0..5u128 {
                points.push((m, n));
            }
        }
        for &a in &points {
            for &b in &points {
                let pa = p(&[a.1, a.0]);
                let pb = p(&[b.1, b.0]);
                let (sm, sn) = hand_add(a, b);
                assert_eq!(poly_add(&pa, &pb), p(&[sn, sm]), "{a:?} + {b:?}");
                assert_eq!(poly_cmp(&pa, &pb), hand_cmp(a, b), "{a:?} <=> {b:?}");
                // product within degree ≤ 1 only when b is finite or a is finite
                if b.0 == 0 {
                    let expected = if a.0 == 0 {
                        p(&[a.1 * b.1])
                    } else {
                        p(&[if b.1 == 0 { 0 } else { a.1 }, a.0 * b.1])
                    };
                    assert_eq!(poly_mul(&pa, &pb), expected, "{a:?} * {b:?}");
                } else if a.0 == 0 && a.1 > 0 {
                    // n·(ω·m + k) = ω·m + n·k
                    assert_eq!(poly_mul(&pa, &pb), p(&[a.1 * b.1, b.0]), "{a:?} * {b:?}");
                }
            }
        }
    }

    #[test]
    fn ordinal_round_trip() {
        for c in [vec![], vec![3], vec![0, 1], vec![7, 0, 2, 1]] {
            let x = p(&c);
            assert_eq!(PolyOrdinal::from_ordinal(&x.to_ordinal()), Some(x));
        }
        assert_eq!(
            PolyOrdinal::from_ordinal(&Ordinal::omega_pow(Ordinal::omega())),
            None
        );
    }
}
