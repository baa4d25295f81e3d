//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ordinal_core::bij::Bijection;
use ordinal_core::cli::{eval_expr, from_json, parse, print_canonical, to_json};
use ordinal_core::oracle::harness::{self, ArithOps, PropertyResult, Report};
use ordinal_core::oracle::{SampleConfig, Sampler};
use ordinal_core::Ordinal;

const SEED: u64 = 20_241_018;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn ord(s: &str) -> Ordinal {
    eval_expr(&parse(s).unwrap()).unwrap()
}

/// Passes when every property passed with at least `min_samples` each.
fn judge(results: &[PropertyResult], min_samples: usize) -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for r in results {
        let good = r.passed() && r.samples >= min_samples;
        ok &= good;
        let mut line = format!("{}: {}/{} failed", r.name, r.failures, r.samples);
        if let Some(c) = &r.counterexample {
            line.push_str(&format!(" [{c}]"));
        }
        detail.push(line);
    }
    Outcome {
        ok,
        detail: detail.join("; "),
    }
}

fn timed(outcome: Outcome, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let within = limit.is_none_or(|l| elapsed < l);
    let budget = limit.map_or(String::new(), |l| {
        format!(" (limit {:.0}s)", l.as_secs_f64())
    });
    Outcome {
        ok: outcome.ok && within,
        detail: format!("{}; {:.2}s{budget}", outcome.detail, elapsed.as_secs_f64()),
    }
}

fn differential() -> Outcome {
    let start = Instant::now();
    let report = harness::run_differential(&harness::differential_config(SEED, 10_000)).unwrap();
    timed(
        judge(&report.properties, 10_000),
        start.elapsed(),
        Some(Duration::from_secs(5)),
    )
}

fn algebraic_laws() -> Outcome {
    let cfg = harness::law_config(SEED, 1_000);
    judge(
        &[
            harness::add_monoid(&cfg).unwrap(),
            harness::mul_laws(&cfg).unwrap(),
            harness::pow_laws(&cfg).unwrap(),
        ],
        1_000,
    )
}

fn absorption() -> Outcome {
    let pool = ["0", "1", "2", "w", "w+1", "w^2*2", "w^w"]
        .map(ord)
        .to_vec();
    let cfg = SampleConfig::new(SEED, 1_000).with_pool(pool);
    judge(&[harness::absorption(&cfg).unwrap()], 1_000)
}

fn cnf_bijection() -> Outcome {
    let start = Instant::now();
    let cfg = SampleConfig::new(SEED, 1_000);
    let (bases, bounds) = (harness::cnf_bases(), harness::cnf_bounds());
    let results = [
        harness::cnf_round_trip(&cfg, &bases, &bounds).unwrap(),
        harness::cnf_eval_bound(&cfg, &bases, &bounds).unwrap(),
    ];
    // 12 base/bound pairs, 1,000 trips each way.
    let pairs = bases.len() * bounds.len();
    let mut outcome = judge(&results[..1], 2 * 1_000 * pairs);
    let bound = judge(&results[1..], 1_000 * pairs);
    outcome.ok &= bound.ok;
    outcome.detail = format!("{}; {}", outcome.detail, bound.detail);
    timed(outcome, start.elapsed(), Some(Duration::from_secs(10)))
}

fn collapse() -> Outcome {
    let cfg = SampleConfig::new(SEED, 1_000);
    let bounds = harness::head_bounds();
    let heads: Vec<(String, Bijection)> = bounds
        .iter()
        .map(|b| (format!("cnf_head({b})"), Bijection::cnf_head(b).unwrap()))
        .collect();
    let results = [
        harness::cnf_head_codomain(&cfg, &bounds).unwrap(),
        harness::bijection_round_trip(&cfg, &heads).unwrap(),
        harness::chains_construct(&cfg).unwrap(),
    ];
    let mut outcome = judge(&results, bounds.len());
    outcome.ok &= results[1].samples == 2 * 1_000 * bounds.len();
    outcome
}

fn pairing() -> Outcome {
    let start = Instant::now();
    let cfg = SampleConfig::new(SEED, 1_000);
    let bounds = harness::pairing_bounds();
    let pairings: Vec<(String, Bijection)> = bounds
        .iter()
        .map(|b| (format!("pairing({b})"), Bijection::pairing(b).unwrap()))
        .collect();
    let results = [
        harness::bijection_round_trip(&cfg, &pairings).unwrap(),
        harness::pairing_injective(&cfg, &bounds).unwrap(),
        harness::pairing_exhaustive(50),
    ];
    let mut outcome = judge(&results, 2_500);
    outcome.ok &= results[0].samples == 2 * 1_000 * bounds.len()
        && results[1].samples == 1_000 * bounds.len()
        && results[2].samples == 2_500;
    timed(outcome, start.elapsed(), Some(Duration::from_secs(30)))
}

fn sequences() -> Outcome {
    let cfg = SampleConfig::new(SEED, 1_000);
    let bounds = harness::seq_bounds();
    judge(
        &[
            harness::seq_round_trip(&cfg, &bounds, 6).unwrap(),
            harness::seq_injective(&cfg, &bounds, 6).unwrap(),
            harness::seq_decode_sound(&cfg, &bounds).unwrap(),
        ],
        2_000,
    )
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_ordcalc"))
        .args(args)
        .output()
        .expect("ordcalc runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn cli_surface() -> Outcome {
    let pool = [
        "0",
        "1",
        "2",
        "7",
        "w",
        "w+1",
        "w^2*3+4",
        "w^w",
        "w^(w+1)*2",
    ]
    .map(ord)
    .to_vec();
    let cfg = SampleConfig::new(SEED, 1_000)
        .with_pool(pool)
        .with_max_coefficient(1_000_000_000_000);
    let mut s = Sampler::new(&cfg).unwrap();
    let mut text_failures = Vec::new();
    let mut json_failures = 0;
    for _ in 0..1_000 {
        let x = s.ordinal();
        let text = print_canonical(&x);
        let again = parse(&text).ok().and_then(|e| eval_expr(&e).ok());
        if again.as_ref().map(print_canonical).as_deref() != Some(text.as_str()) {
            text_failures.push(text);
        }
        if from_json(&to_json(&x)).ok() != Some(x) {
            json_failures += 1;
        }
    }
    let classes = [
        ("success", &["norm", "1+w"][..], 0),
        ("domain error", &["sub", "w^2", "w"][..], 1),
        ("syntax error", &["norm", "w^^2"][..], 2),
        ("usage error", &["pair", "w", "junk"][..], 2),
        (
            "self-test failure",
            &["selftest", "--samples", "5", "--mutate", "broken-add"][..],
            3,
        ),
    ];
    let mut codes = Vec::new();
    let mut codes_ok = true;
    for (name, args, want) in classes {
        let got = exit_code(args);
        codes_ok &= got == want;
        codes.push(format!("{name}={got}"));
    }
    Outcome {
        ok: text_failures.is_empty() && json_failures == 0 && codes_ok,
        detail: format!(
            "text round trips 1000, {} failed{}; json failures {json_failures}; exit codes {}",
            text_failures.len(),
            text_failures
                .first()
                .map(|t| format!(" [{t}]"))
                .unwrap_or_default(),
            codes.join(", ")
        ),
    }
}

fn mutation() -> Outcome {
    let cfg = harness::differential_config(SEED, 10_000);
    let report: Report = harness::run_differential_with(&cfg, &ArithOps::broken_add()).unwrap();
    let add = report.get("oracle.add").unwrap();
    Outcome {
        ok: add.failures > 0 && add.counterexample.is_some(),
        detail: format!(
            "broken add: {}/{} mismatches, first [{}]",
            add.failures,
            add.samples,
            add.counterexample.as_deref().unwrap_or("none")
        ),
    }
}

fn total_order() -> Outcome {
    let cfg = SampleConfig::new(SEED, 10_000);
    judge(&[harness::compare_total_order(&cfg).unwrap()], 10_000)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("differential arithmetic", differential),
        ("algebraic laws", algebraic_laws),
        ("absorption identities", absorption),
        ("normal-form bijection", cnf_bijection),
        ("collapse bijection", collapse),
        ("pairing", pairing),
        ("sequence injection", sequences),
        ("cli surface", cli_surface),
        ("mutation sensitivity", mutation),
        ("total order", total_order),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2} {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.ok);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
