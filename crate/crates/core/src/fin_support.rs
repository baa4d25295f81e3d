//! Finitely supported functions `β → α` and the Cantor normal form bijection
//! onto the ordinal exponential `α^β`.

use std::fmt;

use crate::bij::{Bijection, Domain, Point};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// A function from the ordinals below `index_bound` into the ordinals below
/// `base` that is zero almost everywhere. Only the nonzero entries are stored,
/// sorted by strictly decreasing index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSuppFn {
    base: Ordinal,
    index_bound: Ordinal,
    entries: Vec<(Ordinal, Ordinal)>,
}

impl FinSuppFn {
    /// Validates and normalizes `(index, value)` pairs. Zero values are
    /// dropped; entries may be given in any order.
    pub fn new(
        base: Ordinal,
        index_bound: Ordinal,
        mut entries: Vec<(Ordinal, Ordinal)>,
    ) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::BadBase);
        }
        entries.retain(|(_, value)| !value.is_zero());
        entries.sort_by(|x, y| y.0.cmp(&x.0));
        for (i, (index, value)) in entries.iter().enumerate() {
            if *index >= index_bound {
                return Err(Error::OutOfRange {
                    value: index.to_string(),
                    bound: index_bound.to_string(),
                });
            }
            if *value >= base {
                return Err(Error::OutOfRange {
                    value: value.to_string(),
                    bound: base.to_string(),
                });
            }
            if i > 0 && entries[i - 1].0 == *index {
                return Err(Error::MalformedCnf(format!("index {index} given twice")));
            }
        }
        Ok(Self {
            base,
            index_bound,
            entries,
        })
    }

    pub fn empty(base: Ordinal, index_bound: Ordinal) -> Result<Self> {
        Self::new(base, index_bound, Vec::new())
    }

    pub fn base(&self) -> &Ordinal {
        &self.base
    }

    pub fn index_bound(&self) -> &Ordinal {
        &self.index_bound
    }

    /// Support entries, largest index first.
    pub fn entries(&self) -> &[(Ordinal, Ordinal)] {
        &self.entries
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: &Ordinal) -> Ordinal {
        self.entries
            .iter()
            .find(|(i, _)| i == index)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }
}

impl fmt::Debug for FinSuppFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSuppFn[{} -> {}]{{", self.index_bound, self.base)?;
        for (i, (index, value)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{index}: {value}")?;
        }
        f.write_str("}")
    }
}

/// `Σ α^γ·f(γ)` over the support, largest index first.
pub fn cnf_eval(f: &FinSuppFn) -> Ordinal {
    f.entries
        .iter()
        .fold(Ordinal::zero(), |acc, (index, value)| {
            &acc + &(&f.base.pow(index) * value)
        })
}

/// Largest `γ` with `base^γ ≤ z`, for `base ≥ 2` and `z ≥ 1`.
fn greatest_log(base: &Ordinal, z: &Ordinal) -> Ordinal {
    let (z_lead, z_coefficient, _) = z.leading().expect("z is nonzero");
    if let Some(m) = base.as_natural() {
        // m^(ω·L + n) = ω^L·m^n, so L is z's leading exponent and n = ⌊log_m k⌋.
        let mut n = 0u64;
        let mut power = m.clone();
        while power <= z_coefficient {
            n += 1;
            power *= m;
        }
        return &(&Ordinal::omega() * &z_lead) + &Ordinal::nat(n);
    }
    // base^γ has leading exponent a₁·γ; the largest γ with a₁·γ ≤ z_lead
    // works unless the leading exponents tie and the tail overshoots, in which
    // case γ is a successor and its predecessor works.
    let (base_lead, _, _) = base.leading().expect("base is nonzero");
    let (g, _) = z_lead.div_rem(&base_lead).expect("infinite base");
    if base.pow(&g) <= *z {
        g
    } else {
        g.predecessor()
            .expect("overshoot only happens at successor exponents")
    }
}

/// The unique finitely supported `f: β → α` with `cnf_eval(f) = z`.
pub fn cnf_inv(base: &Ordinal, index_bound: &Ordinal, z: &Ordinal) -> Result<FinSuppFn> {
    if base.is_zero() {
        return Err(Error::BadBase);
    }
    let limit = base.pow(index_bound);
    if *z >= limit {
        return Err(Error::OutOfRange {
            value: z.to_string(),
            bound: limit.to_string(),
        });
    }
    let mut entries = Vec::new();
    let mut rest = z.clone();
    while !rest.is_zero() {
        let index = greatest_log(base, &rest);
        let (value, remainder) = rest.div_rem(&base.pow(&index))?;
        entries.push((index, value));
        rest = remainder;
    }
    Ok(FinSuppFn {
        base: base.clone(),
        index_bound: index_bound.clone(),
        entries,
    })
}

fn ord_bounds(map: &Bijection) -> Result<(&Ordinal, &Ordinal)> {
    match (map.domain(), map.codomain()) {
        (Domain::Ord(from), Domain::Ord(to)) => Ok((from, to)),
        (d, c) => Err(Error::DomainMismatch {
            expected: "a bijection between ordinals".into(),
            found: format!("{d} -> {c}"),
        }),
    }
}

/// Moves every support point `ξ` to `map(ξ)`: `g(map(ξ)) = f(ξ)`.
pub fn lift_index(map: &Bijection, f: &FinSuppFn) -> Result<FinSuppFn> {
    let (from, to) = ord_bounds(map)?;
    if *from != f.index_bound {
        return Err(Error::DomainMismatch {
            expected: from.to_string(),
            found: f.index_bound.to_string(),
        });
    }
    let mut entries = f
        .entries
        .iter()
        .map(|(index, value)| Ok((map.forward_ord(index)?, value.clone())))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|x, y| y.0.cmp(&x.0));
    Ok(FinSuppFn {
        base: f.base.clone(),
        index_bound: to.clone(),
        entries,
    })
}

/// Relabels every value through `map`, which must send 0 to 0.
pub fn lift_value(map: &Bijection, f: &FinSuppFn) -> Result<FinSuppFn> {
    let (from, to) = ord_bounds(map)?;
    if *from != f.base {
        return Err(Error::DomainMismatch {
            expected: from.to_string(),
            found: f.base.to_string(),
        });
    }
    let zero_image = map.forward(&Point::Ord(Ordinal::zero()))?;
    if zero_image != Point::Ord(Ordinal::zero()) {
        return Err(Error::ZeroNotFixed(zero_image.to_string()));
    }
    let entries = f
        .entries
        .iter()
        .map(|(index, value)| Ok((index.clone(), map.forward_ord(value)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FinSuppFn {
        base: to.clone(),
        index_bound: f.index_bound.clone(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> Ordinal {
        Ordinal::nat(k)
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    fn w_pow(k: u64) -> Ordinal {
        Ordinal::omega_pow(n(k))
    }

    #[test]
    fn eval_examples() {
        let f = FinSuppFn::empty(w(), w()).unwrap();
        assert_eq!(cnf_eval(&f), Ordinal::zero());

        let f = FinSuppFn::new(w(), w(), vec![(n(2), n(3)), (n(0), n(5))]).unwrap();
        let expected = &(&w_pow(2) * &n(3)) + &n(5);
        assert_eq!(cnf_eval(&f), expected);

        let f = FinSuppFn::new(n(2), w(), vec![(n(3), n(1)), (n(1), n(1))]).unwrap();
        assert_eq!(cnf_eval(&f), n(10));
    }

    #[test]
    fn inv_examples() {
        assert_eq!(cnf_inv(&w(), &w(), &n(0)).unwrap().support_len(), 0);

        let z = &(&w_pow(2) * &n(3)) + &n(5);
        let f = cnf_inv(&w(), &w(), &z).unwrap();
        assert_eq!(f.entries(), &[(n(2), n(3)), (n(0), n(5))]);

        let f = cnf_inv(&n(2), &w(), &n(10)).unwrap();
        assert_eq!(f.entries(), &[(n(3), n(1)), (n(1), n(1))]);
    }

    #[test]
    fn inv_errors() {
        assert_eq!(cnf_inv(&Ordinal::zero(), &w(), &n(0)), Err(Error::BadBase));
        assert!(matches!(
            cnf_inv(&n(2), &n(3), &n(8)),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            cnf_inv(&w(), &w(), &w_pow(1).pow(&w())),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn base_one_has_only_the_empty_function() {
        let f = cnf_inv(&n(1), &w_pow(2), &n(0)).unwrap();
        assert_eq!(f.support_len(), 0);
        assert_eq!(cnf_eval(&f), n(0));
        assert!(cnf_inv(&n(1), &w_pow(2), &n(1)).is_err());
    }

    #[test]
    fn infinite_base_with_tail() {
        // base ω+1: (ω+1)^2 = ω²+ω+1 > ω², so the log of ω² is 1.
        let base = w().succ();
        let z = w_pow(2);
        let f = cnf_inv(&base, &w(), &z).unwrap();
        assert_eq!(cnf_eval(&f), z);
        assert_eq!(f.entries()[0].0, n(1));
    }

    #[test]
    fn construction_validates() {
        assert_eq!(FinSuppFn::new(n(0), w(), vec![]), Err(Error::BadBase));
        assert!(FinSuppFn::new(n(3), w(), vec![(n(1), n(3))]).is_err());
        assert!(FinSuppFn::new(n(3), n(2), vec![(n(2), n(1))]).is_err());
        assert!(FinSuppFn::new(n(3), w(), vec![(n(1), n(1)), (n(1), n(2))]).is_err());
        let f = FinSuppFn::new(n(3), w(), vec![(n(0), n(2)), (n(4), n(0)), (n(5), n(1))]).unwrap();
        assert_eq!(f.entries(), &[(n(5), n(1)), (n(0), n(2))]);
        assert_eq!(f.get(&n(0)), n(2));
        assert_eq!(f.get(&n(4)), n(0));
    }

    #[test]
    fn lift_index_examples() {
        let beta = &w() * &n(2);
        let f = FinSuppFn::new(w(), beta.clone(), vec![(w().succ(), n(2))]).unwrap();
        let id = Bijection::identity(Domain::Ord(beta.clone()));
        assert_eq!(lift_index(&id, &f).unwrap(), f);

        let empty = FinSuppFn::empty(w(), beta.clone()).unwrap();
        let swap = Bijection::index_swap(&w()).unwrap();
        let lifted = lift_index(&swap, &empty).unwrap();
        assert_eq!(lifted.support_len(), 0);

        // ι(ω+1) = 2·1 + 1 = 3
        let lifted = lift_index(&swap, &f).unwrap();
        assert_eq!(lifted.entries(), &[(n(3), n(2))]);
        assert_eq!(lifted.index_bound(), &w());
        assert_eq!(lift_index(&swap.inverse(), &lifted).unwrap(), f);
    }

    #[test]
    fn lift_value_examples() {
        let w2 = w_pow(2);
        let f = FinSuppFn::new(w2.clone(), w(), vec![(n(5), w().succ())]).unwrap();
        let id = Bijection::identity(Domain::Ord(w2.clone()));
        assert_eq!(lift_value(&id, &f).unwrap(), f);

        let collapse = Bijection::omega_sq_collapse();
        let lifted = lift_value(&collapse, &f).unwrap();
        assert_eq!(lifted.entries(), &[(n(5), n(4))]);
        assert_eq!(lifted.base(), &w());
        assert_eq!(lift_value(&collapse.inverse(), &lifted).unwrap(), f);

        let empty = FinSuppFn::empty(w2, w()).unwrap();
        assert_eq!(lift_value(&collapse, &empty).unwrap().support_len(), 0);
    }

    #[test]
    fn lift_errors() {
        let f = FinSuppFn::new(w(), w(), vec![(n(1), n(1))]).unwrap();
        let swap = Bijection::index_swap(&w()).unwrap();
        assert!(matches!(
            lift_index(&swap, &f),
            Err(Error::DomainMismatch { .. })
        ));
        // add_commute(1, ω) sends 0 to ω
        let shift = Bijection::add_commute(&n(1), &w());
        let g = FinSuppFn::new(w(), n(3), vec![(n(1), n(1))]).unwrap();
        assert!(matches!(
            lift_value(&shift, &g),
            Err(Error::ZeroNotFixed(_))
        ));
        assert!(matches!(
            lift_value(&Bijection::cantor_nat(), &g),
            Err(Error::DomainMismatch { .. })
        ));
    }
}
