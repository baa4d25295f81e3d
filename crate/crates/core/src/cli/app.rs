//! The `ordcalc` command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 syntax or usage error, 3 failed
//! self-test.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::json::{from_json, to_value};
use super::parse::{eval_expr, parse, SyntaxError};
use super::print::print_canonical;
use crate::bij::{Bijection, Direction, Point, TraceLine};
use crate::error::Error;
use crate::fin_support::{cnf_eval, cnf_inv, FinSuppFn};
use crate::oracle::{run_property_suite_with, ArithOps, SampleConfig};
use crate::ordinal::Ordinal;
use crate::seq_inj::{OrdSequence, SeqCodec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

/// Ordinal calculator over Cantor normal forms below epsilon-zero.
///
/// Ordinals are written with `w` for omega, `+`, `*`, `^` and parentheses,
/// e.g. `w^2*3 + w + 1`. An argument starting with `[` is read as JSON.
#[derive(Debug, Parser)]
#[command(name = "ordcalc", version)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print each bijection step to standard error.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Norm {
        expr: String,
    },
    /// Compare two ordinals: LT, EQ or GT.
    Cmp {
        a: String,
        b: String,
    },
    Add {
        a: String,
        b: String,
    },
    Mul {
        a: String,
        b: String,
    },
    Pow {
        a: String,
        b: String,
    },
    /// The unique g with A + g = B, for A <= B.
    Sub {
        a: String,
        b: String,
    },
    /// Quotient and remainder of Z divided by A: Z = A*q + r with r < A.
    Divmod {
        z: String,
        a: String,
    },
    /// Map (X, Y) through the pairing bijection of BETA.
    Pair {
        beta: String,
        x: String,
        y: String,
    },
    /// Split Z through the inverse pairing bijection of BETA.
    Unpair {
        beta: String,
        z: String,
    },
    /// Map Z < BETA to w^g, where w^g is the leading power of BETA.
    Cnfhead {
        beta: String,
        z: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Finitely supported functions and base-ALPHA normal forms.
    Cnfmap {
        #[command(subcommand)]
        op: CnfmapOp,
    },
    /// Finite sequences coded as single ordinals.
    Seq {
        #[command(subcommand)]
        op: SeqOp,
    },
    /// Run the property suite.
    Selftest {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, hide = true, value_parser = ["standard", "broken-add"])]
        mutate: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum CnfmapOp {
    /// Sum of ALPHA^IDX * VAL over the given IDX VAL pairs.
    Eval {
        alpha: String,
        beta: String,
        #[arg(value_name = "IDX VAL")]
        entries: Vec<String>,
    },
    /// The IDX -> VAL pairs whose evaluation is Z.
    Inv {
        alpha: String,
        beta: String,
        z: String,
    },
}

#[derive(Debug, Subcommand)]
enum SeqOp {
    Encode { beta: String, items: Vec<String> },
    Decode { beta: String, z: String },
}

#[derive(Debug)]
enum Failure {
    Syntax { input: String, error: SyntaxError },
    Usage(String),
    Domain(Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Syntax { .. } | Failure::Usage(_) => EXIT_SYNTAX,
            Failure::Domain(Error::Schema(_)) => EXIT_SYNTAX,
            Failure::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Syntax { input, error } => {
                writeln!(f, "error: {error}")?;
                writeln!(f, "  {input}")?;
                write!(f, "  {}^", " ".repeat(error.offset))
            }
            Failure::Usage(msg) => write!(f, "error: {msg}"),
            Failure::Domain(e) => write!(f, "error: {e}"),
        }
    }
}

fn ordinal(text: &str) -> Result<Ordinal, Failure> {
    if text.trim_start().starts_with('[') {
        return Ok(from_json(text)?);
    }
    let expr = parse(text).map_err(|error| Failure::Syntax {
        input: text.to_owned(),
        error,
    })?;
    Ok(eval_expr(&expr)?)
}

struct Session<'a> {
    json: bool,
    trace: Option<Vec<TraceLine>>,
    out: &'a mut dyn Write,
}

impl Session<'_> {
    fn line(&mut self, text: impl fmt::Display) {
        let _ = writeln!(self.out, "{text}");
    }

    fn ordinal(&mut self, x: &Ordinal) {
        if self.json {
            self.line(to_value(x));
        } else {
            self.line(print_canonical(x));
        }
    }

    /// Several ordinals: one per line, or a JSON array.
    fn ordinals(&mut self, xs: &[Ordinal]) {
        if self.json {
            self.line(Value::Array(xs.iter().map(to_value).collect()));
        } else {
            for x in xs {
                self.line(print_canonical(x));
            }
        }
    }

    fn trace(&mut self) -> Option<&mut Vec<TraceLine>> {
        self.trace.as_mut()
    }

    fn apply(&mut self, b: &Bijection, direction: Direction, x: &Point) -> Result<Point, Error> {
        b.apply(direction, x, self.trace())
    }
}

/// Runs one command line, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().ansi().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_SYNTAX;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    let mut session = Session {
        json: cli.json,
        trace: cli.trace.then(Vec::new),
        out,
    };
    let result = dispatch(cli.command, &mut session);
    if let Some(lines) = session.trace.take() {
        for line in lines {
            let _ = writeln!(err, "{line}");
        }
    }
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "{failure}");
            failure.exit_code()
        }
    }
}

fn dispatch(command: Command, s: &mut Session<'_>) -> Result<i32, Failure> {
    match command {
        Command::Norm { expr } => s.ordinal(&ordinal(&expr)?),
        Command::Cmp { a, b } => {
            let word = match ordinal(&a)?.cmp(&ordinal(&b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            if s.json {
                s.line(json!(word));
            } else {
                s.line(word);
            }
        }
        Command::Add { a, b } => s.ordinal(&(&ordinal(&a)? + &ordinal(&b)?)),
        Command::Mul { a, b } => s.ordinal(&(&ordinal(&a)? * &ordinal(&b)?)),
        Command::Pow { a, b } => {
            let (a, b) = (ordinal(&a)?, ordinal(&b)?);
            let p = a
                .checked_pow(&b)
                .ok_or_else(|| Error::Overflow(format!("({a})^({b})")))?;
            s.ordinal(&p);
        }
        Command::Sub { a, b } => s.ordinal(&ordinal(&a)?.sub_left(&ordinal(&b)?)?),
        Command::Divmod { z, a } => {
            let (q, r) = ordinal(&z)?.div_rem(&ordinal(&a)?)?;
            if s.json {
                s.line(json!({ "quotient": to_value(&q), "remainder": to_value(&r) }));
            } else {
                s.line(print_canonical(&q));
                s.line(print_canonical(&r));
            }
        }
        Command::Pair { beta, x, y } => {
            let j = Bijection::pairing(&ordinal(&beta)?)?;
            let p = Point::ord_pair(ordinal(&x)?, ordinal(&y)?);
            let z = s.apply(&j, Direction::Forward, &p)?;
            s.ordinal(z.as_ord().expect("pairing lands in an ordinal"));
        }
        Command::Unpair { beta, z } => {
            let j = Bijection::pairing(&ordinal(&beta)?)?;
            let p = s.apply(&j, Direction::Backward, &Point::Ord(ordinal(&z)?))?;
            let (x, y) = p.into_ord_pair().expect("pairing splits into a pair");
            s.ordinals(&[x, y]);
        }
        Command::Cnfhead { beta, z, inverse } => {
            let h = Bijection::cnf_head(&ordinal(&beta)?)?;
            let direction = if inverse {
                Direction::Backward
            } else {
                Direction::Forward
            };
            let y = s.apply(&h, direction, &Point::Ord(ordinal(&z)?))?;
            s.ordinal(y.as_ord().expect("cnf_head maps ordinals"));
        }
        Command::Cnfmap { op } => cnfmap(op, s)?,
        Command::Seq { op } => seq(op, s)?,
        Command::Selftest {
            seed,
            samples,
            mutate,
        } => return selftest(seed, samples, mutate.as_deref(), s),
    }
    Ok(EXIT_OK)
}

fn cnfmap(op: CnfmapOp, s: &mut Session<'_>) -> Result<(), Failure> {
    match op {
        CnfmapOp::Eval {
            alpha,
            beta,
            entries,
        } => {
            if entries.len() % 2 != 0 {
                return Err(Failure::Usage(
                    "cnfmap eval takes IDX VAL pairs; the last index has no value".into(),
                ));
            }
            let entries = entries
                .chunks(2)
                .map(|pair| Ok((ordinal(&pair[0])?, ordinal(&pair[1])?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let f = FinSuppFn::new(ordinal(&alpha)?, ordinal(&beta)?, entries)?;
            s.ordinal(&cnf_eval(&f));
        }
        CnfmapOp::Inv { alpha, beta, z } => {
            let f = cnf_inv(&ordinal(&alpha)?, &ordinal(&beta)?, &ordinal(&z)?)?;
            if s.json {
                let pairs: Vec<Value> = f
                    .entries()
                    .iter()
                    .map(|(i, v)| json!([to_value(i), to_value(v)]))
                    .collect();
                s.line(Value::Array(pairs));
            } else {
                for (i, v) in f.entries() {
                    s.line(format!("{} -> {}", print_canonical(i), print_canonical(v)));
                }
            }
        }
    }
    Ok(())
}

fn seq(op: SeqOp, s: &mut Session<'_>) -> Result<(), Failure> {
    match op {
        SeqOp::Encode { beta, items } => {
            let beta = ordinal(&beta)?;
            let items = items
                .iter()
                .map(|x| ordinal(x))
                .collect::<Result<Vec<_>, _>>()?;
            let codec = SeqCodec::new(&beta)?;
            let sequence = OrdSequence::new(beta, items)?;
            let z = codec.encode_traced(&sequence, s.trace())?;
            s.ordinal(&z);
        }
        SeqOp::Decode { beta, z } => {
            let codec = SeqCodec::new(&ordinal(&beta)?)?;
            let z = ordinal(&z)?;
            let decoded = codec.decode_traced(&z, s.trace())?;
            let sequence =
                decoded.ok_or_else(|| Error::NotInImage(format!("sequence code {z}")))?;
            s.ordinals(sequence.items());
        }
    }
    Ok(())
}

fn selftest(
    seed: u64,
    samples: usize,
    mutate: Option<&str>,
    s: &mut Session<'_>,
) -> Result<i32, Failure> {
    let ops = mutate
        .and_then(ArithOps::by_name)
        .unwrap_or_else(ArithOps::standard);
    let cfg = SampleConfig::new(seed, samples);
    let report = run_property_suite_with(&cfg, &ops).map_err(|e| Failure::Usage(e.to_string()))?;
    if s.json {
        s.line(report.to_json());
    } else {
        let _ = write!(s.out, "{}", report.to_text());
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    })
}
