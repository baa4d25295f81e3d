//! Explicit, invertible maps between ordinal-shaped sets.
//!
//! A [`Bijection`] is a tree of named primitive steps (commutations, casts,
//! relabelings, Cantor pairing) glued together by composition, inversion and
//! products. Every node knows its domain and codomain, and both directions
//! are evaluated pointwise, optionally recording a step trace.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fin_support::{cnf_eval, cnf_inv, lift_index, lift_value};
use crate::ordinal::Ordinal;

/// The set of ordinals below a bound, or a product of such sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Domain {
    Ord(Ordinal),
    Prod(Box<Domain>, Box<Domain>),
}

impl Domain {
    pub fn ord(bound: Ordinal) -> Self {
        Domain::Ord(bound)
    }

    pub fn prod(left: Domain, right: Domain) -> Self {
        Domain::Prod(Box::new(left), Box::new(right))
    }

    pub fn contains(&self, point: &Point) -> bool {
        match (self, point) {
            (Domain::Ord(bound), Point::Ord(x)) => x < bound,
            (Domain::Prod(l, r), Point::Pair(x, y)) => l.contains(x) && r.contains(y),
            _ => false,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Ord(bound) => write!(f, "Ord({bound})"),
            Domain::Prod(l, r) => write!(f, "{l} x {r}"),
        }
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of a [`Domain`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Ord(Ordinal),
    Pair(Box<Point>, Box<Point>),
}

impl Point {
    pub fn pair(left: Point, right: Point) -> Self {
        Point::Pair(Box::new(left), Box::new(right))
    }

    pub fn ord_pair(left: Ordinal, right: Ordinal) -> Self {
        Point::pair(Point::Ord(left), Point::Ord(right))
    }

    pub fn as_ord(&self) -> Option<&Ordinal> {
        match self {
            Point::Ord(x) => Some(x),
            Point::Pair(..) => None,
        }
    }

    pub fn into_ord(self) -> Option<Ordinal> {
        match self {
            Point::Ord(x) => Some(x),
            Point::Pair(..) => None,
        }
    }

    pub fn into_ord_pair(self) -> Option<(Ordinal, Ordinal)> {
        match self {
            Point::Pair(x, y) => Some((x.into_ord()?, y.into_ord()?)),
            Point::Ord(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Ord(x) => write!(f, "{x}"),
            Point::Pair(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One evaluated primitive step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub step: String,
    pub direction: Direction,
    pub input: Point,
    pub output: Point,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = match self.direction {
            Direction::Forward => "",
            Direction::Backward => "^-1",
        };
        write!(f, "{}{}: {} -> {}", self.step, inv, self.input, self.output)
    }
}

enum Step {
    Identity,
    Cast,
    AddCommute {
        a: Ordinal,
        b: Ordinal,
    },
    MulSplit {
        a: Ordinal,
    },
    MulCommute {
        a: Ordinal,
        b: Ordinal,
    },
    IndexSwap {
        gamma: Ordinal,
    },
    CantorNat,
    ExponentRelabel {
        base: Ordinal,
        from: Ordinal,
        to: Ordinal,
        index_map: Bijection,
    },
    BaseRelabel {
        bound: Ordinal,
        from: Ordinal,
        to: Ordinal,
        value_map: Bijection,
    },
    Compose(Bijection, Bijection),
    Inverse(Bijection),
    Product(Bijection, Bijection),
}

struct Node {
    domain: Domain,
    codomain: Domain,
    step: Step,
}

/// An invertible map with explicit endpoints; cheap to clone.
#[derive(Clone)]
pub struct Bijection(Arc<Node>);

fn ord_point(point: &Point) -> &Ordinal {
    point
        .as_ord()
        .expect("membership checked before evaluation")
}

fn ord_parts(point: &Point) -> (&Ordinal, &Ordinal) {
    match point {
        Point::Pair(x, y) => (ord_point(x), ord_point(y)),
        Point::Ord(_) => unreachable!("membership checked before evaluation"),
    }
}

fn cantor_nat_forward(m: &BigUint, n: &BigUint) -> BigUint {
    let s = m + n;
    (&s * (&s + 1u32)) / 2u32 + n
}

fn cantor_nat_backward(z: &BigUint) -> (BigUint, BigUint) {
    // largest s with s(s+1)/2 ≤ z
    let s = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let n = z - (&s * (&s + 1u32)) / 2u32;
    let m = &s - &n;
    (m, n)
}

/// Cantor's pairing `(m, n) ↦ (m+n)(m+n+1)/2 + n` on naturals.
pub fn cantor_pair(m: &BigUint, n: &BigUint) -> BigUint {
    cantor_nat_forward(m, n)
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    cantor_nat_backward(z)
}

impl Bijection {
    fn node(domain: Domain, codomain: Domain, step: Step) -> Self {
        Bijection(Arc::new(Node {
            domain,
            codomain,
            step,
        }))
    }

    pub fn domain(&self) -> &Domain {
        &self.0.domain
    }

    pub fn codomain(&self) -> &Domain {
        &self.0.codomain
    }

    pub fn identity(domain: Domain) -> Self {
        Self::node(domain.clone(), domain, Step::Identity)
    }

    /// Identity between `Ord(a)` and `Ord(b)`; only defined when `a` and `b`
    /// are the same ordinal.
    pub fn cast(a: &Ordinal, b: &Ordinal) -> Result<Self> {
        if a != b {
            return Err(Error::CastUnequal {
                from: a.to_string(),
                to: b.to_string(),
            });
        }
        Ok(Self::node(
            Domain::Ord(a.clone()),
            Domain::Ord(b.clone()),
            Step::Cast,
        ))
    }

    /// `self` followed by `next`.
    pub fn compose(&self, next: &Bijection) -> Result<Self> {
        if self.codomain() != next.domain() {
            return Err(Error::DomainMismatch {
                expected: self.codomain().to_string(),
                found: next.domain().to_string(),
            });
        }
        Ok(Self::node(
            self.domain().clone(),
            next.codomain().clone(),
            Step::Compose(self.clone(), next.clone()),
        ))
    }

    /// Composes a chain of bijections left to right.
    pub fn chain(steps: &[Bijection]) -> Result<Self> {
        let (first, rest) = steps.split_first().expect("chain needs at least one step");
        rest.iter()
            .try_fold(first.clone(), |acc, next| acc.compose(next))
    }

    pub fn inverse(&self) -> Self {
        if let Step::Inverse(inner) = &self.0.step {
            return inner.clone();
        }
        Self::node(
            self.codomain().clone(),
            self.domain().clone(),
            Step::Inverse(self.clone()),
        )
    }

    pub fn product(&self, other: &Bijection) -> Self {
        Self::node(
            Domain::prod(self.domain().clone(), other.domain().clone()),
            Domain::prod(self.codomain().clone(), other.codomain().clone()),
            Step::Product(self.clone(), other.clone()),
        )
    }

    /// `a + b ≈ b + a` through the disjoint union: the first `a` points go
    /// after `b`, the remaining `b` points go to the front.
    pub fn add_commute(a: &Ordinal, b: &Ordinal) -> Self {
        Self::node(
            Domain::Ord(a + b),
            Domain::Ord(b + a),
            Step::AddCommute {
                a: a.clone(),
                b: b.clone(),
            },
        )
    }

    /// `a·b ≈ b × a` by left division: `z = a·q + r ↦ (q, r)`.
    pub fn mul_split(a: &Ordinal, b: &Ordinal) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::node(
            Domain::Ord(a * b),
            Domain::prod(Domain::Ord(b.clone()), Domain::Ord(a.clone())),
            Step::MulSplit { a: a.clone() },
        ))
    }

    /// `a·b ≈ b·a`: `a·q + r ↦ b·r + q`.
    pub fn mul_commute(a: &Ordinal, b: &Ordinal) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::node(
            Domain::Ord(a * b),
            Domain::Ord(b * a),
            Step::MulCommute {
                a: a.clone(),
                b: b.clone(),
            },
        ))
    }

    /// Exponent positions `γ·2 ≈ 2·γ`: `γ·q + r ↦ 2·r + q`.
    pub fn index_swap(gamma: &Ordinal) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let two = Ordinal::nat(2u32);
        Ok(Self::node(
            Domain::Ord(gamma * &two),
            Domain::Ord(&two * gamma),
            Step::IndexSwap {
                gamma: gamma.clone(),
            },
        ))
    }

    /// Cantor pairing `ω × ω ≈ ω`.
    pub fn cantor_nat() -> Self {
        let w = Ordinal::omega();
        Self::node(
            Domain::prod(Domain::Ord(w.clone()), Domain::Ord(w.clone())),
            Domain::Ord(w),
            Step::CantorNat,
        )
    }

    /// `ω² ≈ ω × ω ≈ ω`; sends 0 to 0.
    pub fn omega_sq_collapse() -> Self {
        let w = Ordinal::omega();
        Self::mul_split(&w, &w)
            .and_then(|split| split.compose(&Self::cantor_nat()))
            .expect("ω·ω splits into ω × ω")
    }

    /// `base^β ≈ base^β′` by moving the Cantor normal form digits along an
    /// index bijection `β ≈ β′`.
    pub fn exponent_relabel(base: &Ordinal, index_map: &Bijection) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::BadBase);
        }
        let (from, to) = ord_endpoints(index_map)?;
        Ok(Self::node(
            Domain::Ord(base.pow(from)),
            Domain::Ord(base.pow(to)),
            Step::ExponentRelabel {
                base: base.clone(),
                from: from.clone(),
                to: to.clone(),
                index_map: index_map.clone(),
            },
        ))
    }

    /// `α^β ≈ α′^β` by relabeling every Cantor normal form digit through a
    /// value bijection `α ≈ α′` that fixes 0.
    pub fn base_relabel(value_map: &Bijection, bound: &Ordinal) -> Result<Self> {
        let (from, to) = ord_endpoints(value_map)?;
        if from.is_zero() || to.is_zero() {
            return Err(Error::BadBase);
        }
        let zero = value_map.forward(&Point::Ord(Ordinal::zero()))?;
        if zero != Point::Ord(Ordinal::zero()) {
            return Err(Error::ZeroNotFixed(zero.to_string()));
        }
        Ok(Self::node(
            Domain::Ord(from.pow(bound)),
            Domain::Ord(to.pow(bound)),
            Step::BaseRelabel {
                bound: bound.clone(),
                from: from.clone(),
                to: to.clone(),
                value_map: value_map.clone(),
            },
        ))
    }

    /// `β ≈ ω^γ` for `β ≥ ω` with leading term `ω^γ·k`, via
    /// `ω^γ·k + ρ ≈ ρ + ω^γ·k = ω^γ·k ≈ k·ω^γ = ω^γ`.
    pub fn cnf_head(beta: &Ordinal) -> Result<Self> {
        if *beta < Ordinal::omega() {
            return Err(Error::TooSmall(beta.to_string()));
        }
        let (gamma, k, rest) = beta.leading()?;
        let k = Ordinal::nat(k);
        let power = Ordinal::omega_pow(gamma);
        let head = &power * &k;
        Self::chain(&[
            Self::add_commute(&head, &rest),
            Self::cast(&(&rest + &head), &head)?,
            Self::mul_commute(&power, &k)?,
            Self::cast(&(&k * &power), &power)?,
        ])
    }

    /// Canonical pairing `β × β ≈ β` for `β ≥ ω`:
    /// `β×β ≈ ω^γ×ω^γ ≈ ω^(γ·2) ≈ ω^(2·γ) = (ω²)^γ ≈ ω^γ ≈ β`.
    pub fn pairing(beta: &Ordinal) -> Result<Self> {
        let head = Self::cnf_head(beta)?;
        let power = match head.codomain() {
            Domain::Ord(p) => p.clone(),
            Domain::Prod(..) => unreachable!("cnf_head lands in an ordinal"),
        };
        let (gamma, _, _) = power.leading()?;
        let w = Ordinal::omega();
        let two = Ordinal::nat(2u32);
        let square = Self::mul_split(&power, &power)?.inverse();
        let core = Self::chain(&[
            square,
            Self::cast(&(&power * &power), &w.pow(&(&gamma * &two)))?,
            Self::exponent_relabel(&w, &Self::index_swap(&gamma)?)?,
            Self::cast(&w.pow(&(&two * &gamma)), &w.pow(&two).pow(&gamma))?,
            Self::base_relabel(&Self::omega_sq_collapse(), &gamma)?,
        ])?;
        Self::chain(&[head.product(&head), core, head.inverse()])
    }

    pub fn forward(&self, x: &Point) -> Result<Point> {
        self.apply(Direction::Forward, x, None)
    }

    pub fn backward(&self, y: &Point) -> Result<Point> {
        self.apply(Direction::Backward, y, None)
    }

    /// Forward evaluation on an ordinal point, returning an ordinal.
    pub fn forward_ord(&self, x: &Ordinal) -> Result<Ordinal> {
        let y = self.forward(&Point::Ord(x.clone()))?;
        y.into_ord().ok_or_else(|| Error::DomainMismatch {
            expected: "an ordinal codomain".into(),
            found: self.codomain().to_string(),
        })
    }

    pub fn backward_ord(&self, y: &Ordinal) -> Result<Ordinal> {
        self.inverse().forward_ord(y)
    }

    /// Evaluates in `direction`, appending one line per primitive step to
    /// `trace` when given.
    pub fn apply(
        &self,
        direction: Direction,
        x: &Point,
        mut trace: Option<&mut Vec<TraceLine>>,
    ) -> Result<Point> {
        let source = match direction {
            Direction::Forward => self.domain(),
            Direction::Backward => self.codomain(),
        };
        if !source.contains(x) {
            return Err(Error::PointOutOfDomain {
                point: x.to_string(),
                domain: source.to_string(),
            });
        }
        let out = match &self.0.step {
            Step::Compose(f, g) => {
                return match direction {
                    Direction::Forward => {
                        let y = f.apply(direction, x, trace.as_deref_mut())?;
                        g.apply(direction, &y, trace)
                    }
                    Direction::Backward => {
                        let y = g.apply(direction, x, trace.as_deref_mut())?;
                        f.apply(direction, &y, trace)
                    }
                };
            }
            Step::Inverse(f) => return f.apply(direction.flip(), x, trace),
            Step::Product(f, g) => {
                let Point::Pair(l, r) = x else {
                    unreachable!("membership checked")
                };
                let l = f.apply(direction, l, trace.as_deref_mut())?;
                let r = g.apply(direction, r, trace)?;
                return Ok(Point::pair(l, r));
            }
            _ => self.primitive(direction, x)?,
        };
        debug_assert!(
            match direction {
                Direction::Forward => self.codomain(),
                Direction::Backward => self.domain(),
            }
            .contains(&out),
            "{} produced {out} outside its target",
            self.name()
        );
        if let Some(trace) = trace {
            trace.push(TraceLine {
                step: self.name().to_string(),
                direction,
                input: x.clone(),
                output: out.clone(),
            });
        }
        Ok(out)
    }

    fn primitive(&self, direction: Direction, x: &Point) -> Result<Point> {
        use Direction::*;
        let out = match (&self.0.step, direction) {
            (Step::Identity | Step::Cast, _) => x.clone(),
            (Step::AddCommute { a, b }, Forward) => {
                let z = ord_point(x);
                Point::Ord(if z < a { b + z } else { a.sub_left(z)? })
            }
            (Step::AddCommute { a, b }, Backward) => {
                let y = ord_point(x);
                Point::Ord(if y < b { a + y } else { b.sub_left(y)? })
            }
            (Step::MulSplit { a }, Forward) => {
                let (q, r) = ord_point(x).div_rem(a)?;
                Point::ord_pair(q, r)
            }
            (Step::MulSplit { a }, Backward) => {
                let (q, r) = ord_parts(x);
                Point::Ord(&(a * q) + r)
            }
            (Step::MulCommute { a, b }, Forward) => Point::Ord(swap_digits(ord_point(x), a, b)?),
            (Step::MulCommute { a, b }, Backward) => Point::Ord(swap_digits(ord_point(x), b, a)?),
            (Step::IndexSwap { gamma }, dir) => {
                let two = Ordinal::nat(2u32);
                let (a, b) = match dir {
                    Forward => (gamma, &two),
                    Backward => (&two, gamma),
                };
                Point::Ord(swap_digits(ord_point(x), a, b)?)
            }
            (Step::CantorNat, Forward) => {
                let (m, n) = ord_parts(x);
                let (m, n) = (naturals(m)?, naturals(n)?);
                Point::Ord(Ordinal::nat(cantor_nat_forward(&m, &n)))
            }
            (Step::CantorNat, Backward) => {
                let (m, n) = cantor_nat_backward(&naturals(ord_point(x))?);
                Point::ord_pair(Ordinal::nat(m), Ordinal::nat(n))
            }
            (
                Step::ExponentRelabel {
                    base,
                    from,
                    to,
                    index_map,
                },
                dir,
            ) => {
                let (bound, map) = match dir {
                    Forward => (from, index_map.clone()),
                    Backward => (to, index_map.inverse()),
                };
                let digits = cnf_inv(base, bound, ord_point(x))?;
                Point::Ord(cnf_eval(&lift_index(&map, &digits)?))
            }
            (
                Step::BaseRelabel {
                    bound,
                    from,
                    to,
                    value_map,
                },
                dir,
            ) => {
                let (base, map) = match dir {
                    Forward => (from, value_map.clone()),
                    Backward => (to, value_map.inverse()),
                };
                let digits = cnf_inv(base, bound, ord_point(x))?;
                Point::Ord(cnf_eval(&lift_value(&map, &digits)?))
            }
            (Step::Compose(..) | Step::Inverse(_) | Step::Product(..), _) => {
                unreachable!("structural steps are handled in apply")
            }
        };
        Ok(out)
    }

    /// Name of the outermost step.
    pub fn name(&self) -> &'static str {
        match &self.0.step {
            Step::Identity => "identity",
            Step::Cast => "cast",
            Step::AddCommute { .. } => "add_commute",
            Step::MulSplit { .. } => "mul_split",
            Step::MulCommute { .. } => "mul_commute",
            Step::IndexSwap { .. } => "index_swap",
            Step::CantorNat => "cantor_nat",
            Step::ExponentRelabel { .. } => "exponent_relabel",
            Step::BaseRelabel { .. } => "base_relabel",
            Step::Compose(..) => "compose",
            Step::Inverse(_) => "inverse",
            Step::Product(..) => "product",
        }
    }

    /// Number of primitive steps in the tree.
    pub fn primitive_count(&self) -> usize {
        match &self.0.step {
            Step::Compose(f, g) | Step::Product(f, g) => f.primitive_count() + g.primitive_count(),
            Step::Inverse(f) => f.primitive_count(),
            _ => 1,
        }
    }
}

/// `a·q + r ↦ b·r + q` where `(q, r)` is the left division of `z` by `a`.
fn swap_digits(z: &Ordinal, a: &Ordinal, b: &Ordinal) -> Result<Ordinal> {
    let (q, r) = z.div_rem(a)?;
    Ok(&(b * &r) + &q)
}

fn naturals(x: &Ordinal) -> Result<BigUint> {
    x.to_natural().ok_or_else(|| Error::PointOutOfDomain {
        point: x.to_string(),
        domain: Domain::Ord(Ordinal::omega()).to_string(),
    })
}

fn ord_endpoints(map: &Bijection) -> Result<(&Ordinal, &Ordinal)> {
    match (map.domain(), map.codomain()) {
        (Domain::Ord(from), Domain::Ord(to)) => Ok((from, to)),
        (d, c) => Err(Error::DomainMismatch {
            expected: "a bijection between ordinals".into(),
            found: format!("{d} -> {c}"),
        }),
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.step {
            Step::Compose(a, b) => write!(f, "{a} ; {b}"),
            Step::Inverse(a) => write!(f, "inverse({a})"),
            Step::Product(a, b) => write!(f, "product({a}, {b})"),
            Step::Identity => write!(f, "identity[{}]", self.domain()),
            Step::Cast => write!(f, "cast[{} = {}]", self.domain(), self.codomain()),
            Step::AddCommute { a, b } => write!(f, "add_commute({a}, {b})"),
            Step::MulSplit { a } => write!(
                f,
                "mul_split[{} -> {}] by {a}",
                self.domain(),
                self.codomain()
            ),
            Step::MulCommute { a, b } => write!(f, "mul_commute({a}, {b})"),
            Step::IndexSwap { gamma } => write!(f, "index_swap({gamma})"),
            Step::CantorNat => f.write_str("cantor_nat"),
            Step::ExponentRelabel {
                base, index_map, ..
            } => {
                write!(f, "exponent_relabel({base}, {index_map})")
            }
            Step::BaseRelabel {
                bound, value_map, ..
            } => {
                write!(f, "base_relabel({value_map}, {bound})")
            }
        }
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bijection[{} -> {}]", self.domain(), self.codomain())
    }
}
