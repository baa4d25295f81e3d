//! Differential checks against [`PolyOrdinal`] and the property suite over
//! every module. Failures are recorded in a [`Report`], never raised.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

use super::poly::{poly_add, poly_cmp, poly_mul, PolyOrdinal};
use super::sample::{ConfigError, SampleConfig, Sampler};
use crate::bij::{Bijection, Domain, Point};
use crate::error::Error;
use crate::fin_support::{cnf_eval, cnf_inv, lift_index, lift_value, FinSuppFn};
use crate::ordinal::Ordinal;
use crate::seq_inj::{OrdSequence, SeqCodec};

type BinOp = fn(&Ordinal, &Ordinal) -> Ordinal;

/// The arithmetic under test in [`run_differential_with`].
#[derive(Clone, Copy)]
pub struct ArithOps {
    pub name: &'static str,
    pub add: BinOp,
    pub mul: BinOp,
    pub cmp: fn(&Ordinal, &Ordinal) -> Ordering,
}

impl ArithOps {
    pub fn standard() -> Self {
        Self {
            name: "standard",
            add: |a, b| a + b,
            mul: |a, b| a * b,
            cmp: Ordinal::cmp,
        }
    }

    /// Mutation hook: addition replaced by the natural sum, which never
    /// absorbs lower terms of the left operand.
    pub fn broken_add() -> Self {
        Self {
            name: "broken-add",
            add: natural_sum,
            ..Self::standard()
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "standard" => Some(Self::standard()),
            "broken-add" => Some(Self::broken_add()),
            _ => None,
        }
    }
}

/// Hessenberg sum: coefficients at equal exponents add, nothing is absorbed.
pub fn natural_sum(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let mut merged: Vec<(Ordinal, BigUint)> = Vec::new();
    let (mut i, mut j) = (0, 0);
    let (ta, tb) = (a.terms(), b.terms());
    while i < ta.len() || j < tb.len() {
        let pick = match (ta.get(i), tb.get(j)) {
            (Some(x), Some(y)) => x.exponent().cmp(y.exponent()),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match pick {
            Ordering::Greater => {
                merged.push((ta[i].exponent().clone(), ta[i].coefficient().clone()));
                i += 1;
            }
            Ordering::Less => {
                merged.push((tb[j].exponent().clone(), tb[j].coefficient().clone()));
                j += 1;
            }
            Ordering::Equal => {
                let c = ta[i].coefficient() + tb[j].coefficient();
                merged.push((ta[i].exponent().clone(), c));
                i += 1;
                j += 1;
            }
        }
    }
    Ordinal::make(merged).expect("merge keeps exponents decreasing")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// First failing input, written in expression syntax.
    pub counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub properties: Vec<PropertyResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed())
    }

    /// One line per property, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let status = if p.passed() { "ok  " } else { "FAIL" };
            let _ = write!(out, "{status} {} ({} samples", p.name, p.samples);
            if !p.passed() {
                let _ = write!(out, ", {} failures", p.failures);
            }
            out.push(')');
            if let Some(c) = &p.counterexample {
                let _ = write!(out, ": {c}");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} properties, {} failed",
            self.properties.len(),
            failed
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Extend<PropertyResult> for Report {
    fn extend<I: IntoIterator<Item = PropertyResult>>(&mut self, iter: I) {
        self.properties.extend(iter);
    }
}

struct Check {
    result: PropertyResult,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Self {
            result: PropertyResult {
                name: name.into(),
                samples: 0,
                failures: 0,
                counterexample: None,
            },
        }
    }

    fn record(&mut self, outcome: Result<(), String>) {
        self.result.samples += 1;
        if let Err(c) = outcome {
            self.result.failures += 1;
            self.result.counterexample.get_or_insert(c);
        }
    }

    fn finish(self) -> PropertyResult {
        self.result
    }
}

fn ensure(ok: bool, describe: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(describe())
    }
}

fn fail(context: String) -> impl FnOnce(Error) -> String {
    move |e| format!("{context}: {e}")
}

fn nat(k: u64) -> Ordinal {
    Ordinal::nat(k)
}

fn w() -> Ordinal {
    Ordinal::omega()
}

fn parse(s: &str) -> Ordinal {
    let expr = crate::cli::parse(s).expect("built-in expression parses");
    crate::cli::eval_expr(&expr).expect("built-in expression evaluates")
}

/// Bases used by the normal-form round trips.
pub fn cnf_bases() -> Vec<Ordinal> {
    ["2", "5", "w", "w^2"].map(parse).to_vec()
}

/// Index bounds used by the normal-form round trips.
pub fn cnf_bounds() -> Vec<Ordinal> {
    ["w", "w*2+3", "w^2"].map(parse).to_vec()
}

pub fn head_bounds() -> Vec<Ordinal> {
    ["w", "w*2+3", "w^2*4+w*2+1", "w^w*3+w*2+1"]
        .map(parse)
        .to_vec()
}

pub fn pairing_bounds() -> Vec<Ordinal> {
    ["w", "w*2+3", "w^2", "w^w", "w^w*3+w*2+1"]
        .map(parse)
        .to_vec()
}

pub fn seq_bounds() -> Vec<Ordinal> {
    ["w", "w^2"].map(parse).to_vec()
}

/// Configuration for the differential run: ordinals below ω^5 with
/// coefficients up to 20.
pub fn differential_config(seed: u64, count: usize) -> SampleConfig {
    SampleConfig::new(seed, count)
}

/// Configuration for the algebraic laws: exponents below 4, at most three
/// terms, small coefficients so powers stay small.
pub fn law_config(seed: u64, count: usize) -> SampleConfig {
    SampleConfig::new(seed, count)
        .with_pool((0..4u64).map(Ordinal::nat).collect())
        .with_max_terms(3)
        .with_max_coefficient(5)
}

pub fn run_differential(cfg: &SampleConfig) -> Result<Report, ConfigError> {
    run_differential_with(cfg, &ArithOps::standard())
}

/// Compares `ops` against the vector engine on `cfg.count` sampled pairs.
pub fn run_differential_with(cfg: &SampleConfig, ops: &ArithOps) -> Result<Report, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 1)?;
    let mut add = Check::new("oracle.add");
    let mut mul = Check::new("oracle.mul");
    let mut cmp = Check::new("oracle.cmp");
    for _ in 0..cfg.count {
        let a = s.ordinal();
        let b = s.ordinal();
        let shown = format!("a = {a}, b = {b}");
        let (Some(pa), Some(pb)) = (PolyOrdinal::from_ordinal(&a), PolyOrdinal::from_ordinal(&b))
        else {
            let outside = Err(format!("{shown}: not below w^w"));
            add.record(outside.clone());
            mul.record(outside.clone());
            cmp.record(outside);
            continue;
        };
        let got = (ops.add)(&a, &b);
        let want = poly_add(&pa, &pb).to_ordinal();
        add.record(ensure(got == want, || {
            format!("{shown}: a + b gave {got}, oracle gave {want}")
        }));
        let got = (ops.mul)(&a, &b);
        let want = poly_mul(&pa, &pb).to_ordinal();
        mul.record(ensure(got == want, || {
            format!("{shown}: a * b gave {got}, oracle gave {want}")
        }));
        let got = (ops.cmp)(&a, &b);
        let want = poly_cmp(&pa, &pb);
        cmp.record(ensure(got == want, || {
            format!("{shown}: compare gave {got:?}, oracle gave {want:?}")
        }));
    }
    Ok(Report {
        properties: vec![add.finish(), mul.finish(), cmp.finish()],
    })
}

/// Every module property at `cfg.count` samples each.
pub fn run_property_suite(cfg: &SampleConfig) -> Result<Report, ConfigError> {
    run_property_suite_with(cfg, &ArithOps::standard())
}

/// [`run_property_suite`] with the differential part run against `ops`.
pub fn run_property_suite_with(cfg: &SampleConfig, ops: &ArithOps) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let laws = SampleConfig {
        max_coefficient: cfg.max_coefficient.min(5),
        max_terms: cfg.max_terms.min(3),
        ..cfg.clone()
    };
    let mut report = Report::default();
    report.extend([
        compare_total_order(cfg)?,
        add_monoid(cfg)?,
        add_monotone(cfg)?,
        mul_laws(cfg)?,
        pow_laws(&laws)?,
        absorption(cfg)?,
        reconstruction(cfg)?,
    ]);
    let below_omega_5 = SampleConfig {
        exponent_pool: (0..5u64).map(Ordinal::nat).collect(),
        ..cfg.clone()
    };
    report.extend(run_differential_with(&below_omega_5, ops)?.properties);
    report.extend([
        cnf_round_trip(cfg, &cnf_bases(), &cnf_bounds())?,
        cnf_eval_bound(cfg, &cnf_bases(), &cnf_bounds())?,
        lift_round_trip(cfg)?,
        bijection_round_trip(cfg, &catalog())?,
        cnf_head_codomain(cfg, &head_bounds())?,
        chains_construct(cfg)?,
        pairing_injective(cfg, &pairing_bounds())?,
        pairing_exhaustive(50),
        seq_round_trip(cfg, &seq_bounds(), 6)?,
        seq_injective(cfg, &seq_bounds(), 6)?,
        seq_decode_sound(cfg, &seq_bounds())?,
    ]);
    Ok(report)
}

pub fn compare_total_order(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 2)?;
    let mut check = Check::new("ord.compare.total_order");
    for _ in 0..cfg.count {
        let (a, b, c) = (s.ordinal(), s.ordinal(), s.ordinal());
        let shown = || format!("a = {a}, b = {b}, c = {c}");
        let lt = |x: &Ordinal, y: &Ordinal| x.cmp(y) == Ordering::Less;
        let trichotomy = [(&a, &b), (&b, &c), (&a, &c)].iter().all(|(x, y)| {
            let holds = [lt(x, y), x == y, lt(y, x)];
            holds.iter().filter(|h| **h).count() == 1 && (x.cmp(y) == Ordering::Equal) == (x == y)
        });
        let transitive = !(lt(&a, &b) && lt(&b, &c)) || lt(&a, &c);
        let transitive_weak = !(a <= b && b <= c) || a <= c;
        check.record(ensure(trichotomy && transitive && transitive_weak, shown));
    }
    Ok(check.finish())
}

pub fn add_monoid(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 3)?;
    let mut check = Check::new("ord.add.monoid");
    let zero = Ordinal::zero();
    for _ in 0..cfg.count {
        let (a, b, c) = (s.ordinal(), s.ordinal(), s.ordinal());
        let ok = &a + &zero == a && &zero + &a == a && &(&a + &b) + &c == &a + &(&b + &c);
        check.record(ensure(ok, || format!("a = {a}, b = {b}, c = {c}")));
    }
    Ok(check.finish())
}

pub fn add_monotone(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 4)?;
    let mut check = Check::new("ord.add.monotone");
    for _ in 0..cfg.count {
        let (a, b, c) = (s.ordinal(), s.ordinal(), s.ordinal());
        let right = b >= c || &a + &b < &a + &c;
        let left = a > b || &a + &c <= &b + &c;
        check.record(ensure(right && left, || {
            format!("a = {a}, b = {b}, c = {c}")
        }));
    }
    Ok(check.finish())
}

pub fn mul_laws(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 5)?;
    let mut check = Check::new("ord.mul.laws");
    let one = Ordinal::one();
    for _ in 0..cfg.count {
        let (a, b, c) = (s.ordinal(), s.ordinal(), s.ordinal());
        let assoc = &(&a * &b) * &c == &a * &(&b * &c);
        let distrib = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        let unit = &a * &one == a && &one * &a == a;
        check.record(ensure(assoc && distrib && unit, || {
            format!("a = {a}, b = {b}, c = {c}")
        }));
    }
    Ok(check.finish())
}

pub fn pow_laws(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 6)?;
    let mut check = Check::new("ord.pow.laws");
    for _ in 0..cfg.count {
        let (a, b, c) = (s.nonzero_ordinal(), s.ordinal(), s.ordinal());
        let sum = a.pow(&(&b + &c)) == &a.pow(&b) * &a.pow(&c);
        let nested = a.pow(&b).pow(&c) == a.pow(&(&b * &c));
        check.record(ensure(sum && nested, || {
            format!("a = {a}, b = {b}, c = {c}")
        }));
    }
    Ok(check.finish())
}

pub fn absorption(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 7)?;
    let mut check = Check::new("ord.absorption");
    for _ in 0..cfg.count {
        let beta = s.ordinal();
        let power = Ordinal::omega_pow(beta.clone());
        let k = nat(s.coefficient());
        let rho = s.below(&power);
        let head = &power * &k;
        let left = &rho + &head == head;

        let gamma = s.nonzero_ordinal();
        let j = nat(s.rng().gen_range(1..=20));
        let indecomposable = Ordinal::omega_pow(gamma.clone());
        let right = &j * &indecomposable == indecomposable;
        check.record(ensure(left && right, || {
            format!("rho = {rho}, b = {beta}, k = {k}, g = {gamma}, j = {j}")
        }));
    }
    Ok(check.finish())
}

pub fn reconstruction(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 8)?;
    let mut check = Check::new("ord.reconstruction");
    for _ in 0..cfg.count {
        let (z, a) = (s.ordinal(), s.nonzero_ordinal());
        let shown = format!("z = {z}, a = {a}");
        let outcome = (|| {
            let (q, r) = z.div_rem(&a).map_err(fail(shown.clone()))?;
            ensure(&(&a * &q) + &r == z && r < a, || {
                format!("{shown}: divmod gave q = {q}, r = {r}")
            })?;
            let (lo, hi) = if a <= z { (&a, &z) } else { (&z, &a) };
            let g = lo.sub_left(hi).map_err(fail(shown.clone()))?;
            ensure(lo + &g == *hi, || format!("{shown}: sub gave {g}"))?;
            ensure(lo == hi || hi.sub_left(lo).is_err(), || {
                format!("{shown}: subtraction past zero succeeded")
            })
        })();
        check.record(outcome);
    }
    Ok(check.finish())
}

fn sample_fin(s: &mut Sampler, base: &Ordinal, bound: &Ordinal) -> FinSuppFn {
    let t = s.rng().gen_range(0..=4);
    let mut entries: Vec<(Ordinal, Ordinal)> =
        (0..t).map(|_| (s.below(bound), s.below(base))).collect();
    entries.sort_by(|x, y| x.0.cmp(&y.0));
    entries.dedup_by(|x, y| x.0 == y.0);
    FinSuppFn::new(base.clone(), bound.clone(), entries).expect("entries sampled in range")
}

fn show_fin(f: &FinSuppFn) -> String {
    let parts: Vec<String> = f
        .entries()
        .iter()
        .map(|(i, v)| format!("{i} -> {v}"))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Both directions of the normal-form bijection, `cfg.count` times each per
/// base and bound.
pub fn cnf_round_trip(
    cfg: &SampleConfig,
    bases: &[Ordinal],
    bounds: &[Ordinal],
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 9)?;
    let mut check = Check::new("fin.cnf_round_trip");
    for base in bases {
        for bound in bounds {
            let top = base.pow(bound);
            for _ in 0..cfg.count {
                let z = s.below(&top);
                let shown = format!("base = {base}, bound = {bound}, z = {z}");
                check.record(
                    cnf_inv(base, bound, &z)
                        .map_err(fail(shown.clone()))
                        .and_then(|f| {
                            let back = cnf_eval(&f);
                            ensure(back == z, || format!("{shown}: came back as {back}"))
                        }),
                );

                let f = sample_fin(&mut s, base, bound);
                let shown = format!("base = {base}, bound = {bound}, f = {}", show_fin(&f));
                check.record(
                    cnf_inv(base, bound, &cnf_eval(&f))
                        .map_err(fail(shown.clone()))
                        .and_then(|g| {
                            ensure(g == f, || format!("{shown}: came back as {}", show_fin(&g)))
                        }),
                );
            }
        }
    }
    Ok(check.finish())
}

pub fn cnf_eval_bound(
    cfg: &SampleConfig,
    bases: &[Ordinal],
    bounds: &[Ordinal],
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 10)?;
    let mut check = Check::new("fin.cnf_eval_bound");
    for base in bases {
        for bound in bounds {
            let top = base.pow(bound);
            for _ in 0..cfg.count {
                let f = sample_fin(&mut s, base, bound);
                let z = cnf_eval(&f);
                check.record(ensure(z < top, || {
                    format!("base = {base}, bound = {bound}, f = {}: {z}", show_fin(&f))
                }));
            }
        }
    }
    Ok(check.finish())
}

pub fn lift_round_trip(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 11)?;
    let mut check = Check::new("fin.lift_round_trip");
    let swaps =
        [nat(3), w(), parse("w^2+3")].map(|g| Bijection::index_swap(&g).expect("valid swap"));
    let value_maps = [
        Bijection::omega_sq_collapse(),
        Bijection::mul_commute(&w(), &nat(2)).expect("valid commute"),
        Bijection::index_swap(&parse("w^2+3")).expect("valid swap"),
    ];
    for _ in 0..cfg.count {
        for iota in &swaps {
            let Domain::Ord(bound) = iota.domain() else {
                unreachable!()
            };
            let f = sample_fin(&mut s, &parse("w+1"), bound);
            let shown = format!("index map {}, f = {}", iota.name(), show_fin(&f));
            check.record(
                lift_index(iota, &f)
                    .and_then(|g| lift_index(&iota.inverse(), &g))
                    .map_err(fail(shown.clone()))
                    .and_then(|g| ensure(g == f, || shown)),
            );
        }
        for c in &value_maps {
            let Domain::Ord(base) = c.domain() else {
                unreachable!()
            };
            let f = sample_fin(&mut s, base, &parse("w*2"));
            let shown = format!("value map {}, f = {}", c.name(), show_fin(&f));
            check.record(
                lift_value(c, &f)
                    .and_then(|g| lift_value(&c.inverse(), &g))
                    .map_err(fail(shown.clone()))
                    .and_then(|g| ensure(g == f, || shown)),
            );
        }
    }
    Ok(check.finish())
}

/// Named bijections exercised by [`bijection_round_trip`].
pub fn catalog() -> Vec<(String, Bijection)> {
    let mut out = Vec::new();
    let mut push = |name: String, b: crate::error::Result<Bijection>| {
        out.push((name, b.expect("catalog entry builds")));
    };
    for (a, b) in [("w*2+1", "w^2+3"), ("1", "w"), ("w", "w"), ("5", "3")] {
        push(
            format!("add_commute({a}, {b})"),
            Ok(Bijection::add_commute(&parse(a), &parse(b))),
        );
    }
    for (a, b) in [("w+1", "w*2+3"), ("w", "3"), ("w^w", "w+2")] {
        push(
            format!("mul_split({a}, {b})"),
            Bijection::mul_split(&parse(a), &parse(b)),
        );
    }
    for (a, b) in [("2", "w"), ("w+2", "w^2+1")] {
        push(
            format!("mul_commute({a}, {b})"),
            Bijection::mul_commute(&parse(a), &parse(b)),
        );
    }
    for g in ["3", "w", "w^2+3"] {
        push(format!("index_swap({g})"), Bijection::index_swap(&parse(g)));
    }
    push("cantor_nat".into(), Ok(Bijection::cantor_nat()));
    push(
        "omega_sq_collapse".into(),
        Ok(Bijection::omega_sq_collapse()),
    );
    push(
        "exponent_relabel(w, index_swap(w))".into(),
        Bijection::index_swap(&w()).and_then(|i| Bijection::exponent_relabel(&w(), &i)),
    );
    push(
        "base_relabel(omega_sq_collapse, w)".into(),
        Bijection::base_relabel(&Bijection::omega_sq_collapse(), &w()),
    );
    for beta in &head_bounds() {
        push(format!("cnf_head({beta})"), Bijection::cnf_head(beta));
    }
    for beta in &pairing_bounds() {
        push(format!("pairing({beta})"), Bijection::pairing(beta));
    }
    out
}

fn round_trip_one(b: &Bijection, x: &Point, shown: &str) -> Result<(), String> {
    let y = b.forward(x).map_err(fail(format!("{shown}, x = {x}")))?;
    ensure(b.codomain().contains(&y), || {
        format!("{shown}, x = {x}: image {y} outside {}", b.codomain())
    })?;
    let back = b.backward(&y).map_err(fail(format!("{shown}, y = {y}")))?;
    ensure(back == *x, || {
        format!("{shown}, x = {x}: came back as {back}")
    })
}

/// `cfg.count` round trips each way through every entry of `catalog`.
pub fn bijection_round_trip(
    cfg: &SampleConfig,
    catalog: &[(String, Bijection)],
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 12)?;
    let mut check = Check::new("bij.round_trip");
    for (name, b) in catalog {
        let inverse = b.inverse();
        let inverse_name = format!("inverse({name})");
        for _ in 0..cfg.count {
            let x = s.point(b.domain());
            check.record(round_trip_one(b, &x, name));
            let y = s.point(b.codomain());
            check.record(round_trip_one(&inverse, &y, &inverse_name));
        }
    }
    Ok(check.finish())
}

pub fn cnf_head_codomain(
    cfg: &SampleConfig,
    bounds: &[Ordinal],
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 13)?;
    let mut check = Check::new("bij.cnf_head_codomain");
    let mut betas = bounds.to_vec();
    betas.extend(
        (0..cfg.count)
            .map(|_| &s.ordinal() + &w())
            .filter(|b| *b >= w()),
    );
    for beta in betas {
        let outcome = Bijection::cnf_head(&beta)
            .map_err(fail(format!("beta = {beta}")))
            .and_then(|h| {
                let (gamma, _, _) = beta.leading().expect("beta is nonzero");
                let want = Domain::Ord(Ordinal::omega_pow(gamma));
                ensure(
                    *h.codomain() == want && *h.domain() == Domain::Ord(beta.clone()),
                    || format!("beta = {beta}: codomain {}", h.codomain()),
                )
            });
        check.record(outcome);
    }
    Ok(check.finish())
}

/// Builds `cnf_head` and `pairing` for sampled bounds; any failing cast is a
/// counterexample.
pub fn chains_construct(cfg: &SampleConfig) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 14)?;
    let mut check = Check::new("bij.chains_construct");
    for _ in 0..cfg.count {
        let beta = &s.ordinal() + &w();
        let beta = if s.rng().gen_bool(0.5) {
            &Ordinal::omega_pow(s.ordinal()) * &beta
        } else {
            beta
        };
        let beta = if beta < w() { w() } else { beta };
        let outcome = Bijection::cnf_head(&beta)
            .and_then(|_| Bijection::pairing(&beta))
            .map(|_| ())
            .map_err(fail(format!("beta = {beta}")));
        check.record(outcome);
    }
    Ok(check.finish())
}

pub fn pairing_injective(
    cfg: &SampleConfig,
    bounds: &[Ordinal],
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 15)?;
    let mut check = Check::new("bij.pairing_injective");
    for beta in bounds {
        let j = match Bijection::pairing(beta) {
            Ok(j) => j,
            Err(e) => {
                check.record(Err(format!("beta = {beta}: {e}")));
                continue;
            }
        };
        let mut seen: HashMap<Ordinal, Point> = HashMap::new();
        for _ in 0..cfg.count {
            let x = s.point(j.domain());
            let outcome = j
                .forward(&x)
                .map_err(fail(format!("beta = {beta}, x = {x}")))
                .and_then(|y| {
                    let z = y.into_ord().expect("pairing lands in an ordinal");
                    ensure(z < *beta, || format!("beta = {beta}, x = {x}: image {z}"))?;
                    match seen.insert(z.clone(), x.clone()) {
                        Some(prev) if prev != x => {
                            Err(format!("beta = {beta}: {prev} and {x} both map to {z}"))
                        }
                        _ => Ok(()),
                    }
                });
            check.record(outcome);
        }
    }
    Ok(check.finish())
}

/// Every pair below `limit` for `β = ω`, checked against Cantor's formula
/// and for collisions.
pub fn pairing_exhaustive(limit: u64) -> PropertyResult {
    let mut check = Check::new("bij.pairing_exhaustive_omega");
    let j = Bijection::pairing(&w()).expect("pairing on w");
    let mut seen = HashMap::new();
    for m in 0..limit {
        for n in 0..limit {
            let x = Point::ord_pair(nat(m), nat(n));
            let outcome = j
                .forward(&x)
                .map_err(fail(format!("x = {x}")))
                .and_then(|y| {
                    let z = y.into_ord().expect("pairing lands in an ordinal");
                    let want = (m + n) * (m + n + 1) / 2 + n;
                    ensure(z == nat(want), || {
                        format!("x = {x}: gave {z}, expected {want}")
                    })?;
                    match seen.insert(z.clone(), (m, n)) {
                        Some(prev) => Err(format!("{prev:?} and ({m}, {n}) both map to {z}")),
                        None => Ok(()),
                    }
                });
            check.record(outcome);
        }
    }
    check.finish()
}

fn sample_sequence(s: &mut Sampler, beta: &Ordinal, max_len: usize) -> OrdSequence {
    let len = s.rng().gen_range(0..=max_len);
    let items = (0..len).map(|_| s.below(beta)).collect();
    OrdSequence::new(beta.clone(), items).expect("items sampled below the bound")
}

fn show_seq(seq: &OrdSequence) -> String {
    let parts: Vec<String> = seq.items().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Round trip and range of the sequence code on `cfg.count` sequences of
/// length at most `max_len` per bound.
pub fn seq_round_trip(
    cfg: &SampleConfig,
    bounds: &[Ordinal],
    max_len: usize,
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 16)?;
    let mut check = Check::new("seq.round_trip");
    for beta in bounds {
        let codec = SeqCodec::new(beta).expect("bound is infinite");
        for _ in 0..cfg.count {
            let seq = sample_sequence(&mut s, beta, max_len);
            let shown = format!("beta = {beta}, s = {}", show_seq(&seq));
            let outcome = codec
                .encode(&seq)
                .and_then(|z| Ok((codec.decode(&z)?, z)))
                .map_err(fail(shown.clone()))
                .and_then(|(back, z)| {
                    ensure(z < *beta, || format!("{shown}: code {z} out of range"))?;
                    ensure(back.as_ref() == Some(&seq), || format!("{shown}: code {z}"))
                });
            check.record(outcome);
        }
    }
    Ok(check.finish())
}

/// No two distinct sampled sequences share a code, across all lengths.
pub fn seq_injective(
    cfg: &SampleConfig,
    bounds: &[Ordinal],
    max_len: usize,
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 17)?;
    let mut check = Check::new("seq.injective");
    for beta in bounds {
        let codec = SeqCodec::new(beta).expect("bound is infinite");
        let mut seen: HashMap<Ordinal, OrdSequence> = HashMap::new();
        for _ in 0..cfg.count {
            let seq = sample_sequence(&mut s, beta, max_len);
            let outcome = codec
                .encode(&seq)
                .map_err(fail(format!("beta = {beta}, s = {}", show_seq(&seq))))
                .and_then(|z| match seen.insert(z.clone(), seq.clone()) {
                    Some(prev) if prev != seq => Err(format!(
                        "beta = {beta}: {} and {} both encode to {z}",
                        show_seq(&prev),
                        show_seq(&seq)
                    )),
                    _ => Ok(()),
                });
            check.record(outcome);
        }
    }
    Ok(check.finish())
}

/// Whenever decoding succeeds, re-encoding gives the code back.
pub fn seq_decode_sound(
    cfg: &SampleConfig,
    bounds: &[Ordinal],
) -> Result<PropertyResult, ConfigError> {
    let mut s = Sampler::with_stream(cfg, 18)?;
    let mut check = Check::new("seq.decode_sound");
    for beta in bounds {
        let codec = SeqCodec::new(beta).expect("bound is infinite");
        for _ in 0..cfg.count {
            let z = s.below(beta);
            let shown = format!("beta = {beta}, z = {z}");
            let outcome = match codec.decode(&z) {
                Ok(Some(seq)) => codec
                    .encode(&seq)
                    .map_err(fail(shown.clone()))
                    .and_then(|back| {
                        ensure(back == z, || format!("{shown}: re-encoded as {back}"))
                    }),
                Ok(None) | Err(Error::SequenceTooLong(_)) => Ok(()),
                Err(e) => Err(format!("{shown}: {e}")),
            };
            check.record(outcome);
        }
    }
    Ok(check.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_sum_keeps_lower_terms() {
        assert_eq!(natural_sum(&nat(3), &w()), parse("w+3"));
        assert_eq!(natural_sum(&parse("w*2+1"), &parse("w+4")), parse("w*3+5"));
        assert_eq!(natural_sum(&Ordinal::zero(), &w()), w());
    }

    #[test]
    fn minimal_run_attempts_everything() {
        let report = run_property_suite(&SampleConfig::new(7, 1)).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert!(report.properties.iter().all(|p| p.samples >= 1));
        assert!(report.get("seq.injective").is_some());
    }

    #[test]
    fn zero_count_rejected() {
        assert_eq!(
            run_property_suite(&SampleConfig::new(7, 0)),
            Err(ConfigError::ZeroCount)
        );
    }

    #[test]
    fn broken_add_is_caught() {
        let cfg = differential_config(11, 500);
        let report = run_differential_with(&cfg, &ArithOps::broken_add()).unwrap();
        let add = report.get("oracle.add").unwrap();
        assert!(add.failures > 0);
        assert!(add.counterexample.as_ref().unwrap().starts_with("a = "));
        assert!(report.get("oracle.mul").unwrap().passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SampleConfig::new(5, 20);
        let a = run_property_suite(&cfg).unwrap();
        let b = run_property_suite(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn text_report_marks_failures() {
        let report = Report {
            properties: vec![PropertyResult {
                name: "x".into(),
                samples: 3,
                failures: 1,
                counterexample: Some("a = w".into()),
            }],
        };
        let text = report.to_text();
        assert!(text.starts_with("FAIL x (3 samples, 1 failures): a = w"));
        assert!(text.ends_with("1 properties, 1 failed\n"));
    }
}
