//! Command-line front end for the `arcline` engine.
//!
//! [`dispatch`] parses an argument list, runs one subcommand and returns the
//! rendered output together with a [`RunReport`] and a process exit code:
//! 0 on success, 1 on a domain error, 2 on a usage error.

use std::time::Instant;

use arcline::bounds::extremal_type;
use arcline::*;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub mod props;
pub mod verify;

pub use verify::CheckResult;

/// Attached to every finite-field result.
pub const RATIONAL_CAVEAT: &str = "rational, not geometric";

/// Environment variable capping `verify` parallelism.
pub const THREADS_ENV: &str = "ARCLINE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "arcline",
    version,
    about = "Count lines on complete intersections via 1-arcs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of lines on a generic complete intersection.
    Lines(LinesArgs),
    /// Number of lines through a general point.
    PointLines(TypeArgs),
    /// Normal form of the line-locus class.
    Locus(TypeArgs),
    /// Contact-locus class for a degree-d hypersurface.
    Contact(ContactArgs),
    /// Upper bound on lines through a general point of an m-fold.
    Bound(BoundArgs),
    /// Schubert-calculus count on G(2, n+1).
    Oracle(OracleArgs),
    /// Arc-ideal generators of a homogeneous polynomial.
    ArcIdeal(ArcIdealArgs),
    /// Exhaustive line search over a prime field.
    FfLines(FfArgs),
    /// Run every cross-check and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct TypeArgs {
    #[arg(long)]
    pub ambient: u32,
    /// Comma-separated degrees, e.g. `3,4`.
    #[arg(long = "type", value_delimiter = ',', required = true)]
    pub degrees: Vec<u32>,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct LinesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TypeArgs,
    /// Also run the Schubert oracle.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ContactArgs {
    #[arg(long)]
    pub ambient: u32,
    #[arg(long)]
    pub degree: u32,
    #[arg(long)]
    pub order: u32,
    /// Codimension of the generic fiber; prints the swept degree.
    #[arg(long)]
    pub sweep: Option<u32>,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundArgs {
    #[arg(long)]
    pub dim: u32,
    #[arg(long)]
    pub codim: Option<u32>,
    #[arg(long)]
    pub min_degree: Option<u32>,
    /// List every admissible type.
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct OracleArgs {
    #[arg(long)]
    pub ambient: u32,
    #[arg(long = "type", value_delimiter = ',', required = true)]
    pub degrees: Vec<u32>,
    /// Degree of the Fano scheme of lines instead of a line count.
    #[arg(long)]
    pub fano: bool,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ArcIdealArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub order: u32,
    /// Reject variables beyond `x<ambient>`.
    #[arg(long)]
    pub ambient: Option<u32>,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct FfArgs {
    #[arg(long)]
    pub prime: u64,
    #[arg(long)]
    pub ambient: u32,
    /// Defining equation; repeat for several.
    #[arg(long = "poly")]
    pub polys: Vec<String>,
    /// Comma-separated coordinates of a point on the variety.
    #[arg(long, value_delimiter = ',')]
    pub through: Option<Vec<u64>>,
    /// Also list every line found (ignored with `--through`).
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub max_ambient: u32,
    #[arg(long)]
    #[serde(skip)]
    pub json: bool,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lines(_) => "lines",
            Command::PointLines(_) => "point-lines",
            Command::Locus(_) => "locus",
            Command::Contact(_) => "contact",
            Command::Bound(_) => "bound",
            Command::Oracle(_) => "oracle",
            Command::ArcIdeal(_) => "arc-ideal",
            Command::FfLines(_) => "ff-lines",
            Command::Verify(_) => "verify",
        }
    }

    fn json(&self) -> bool {
        match self {
            Command::Lines(a) => a.target.json,
            Command::PointLines(a) | Command::Locus(a) => a.json,
            Command::Contact(a) => a.json,
            Command::Bound(a) => a.json,
            Command::Oracle(a) => a.json,
            Command::ArcIdeal(a) => a.json,
            Command::FfLines(a) => a.json,
            Command::Verify(a) => a.json,
        }
    }

    fn inputs(&self) -> Value {
        let v = match self {
            Command::Lines(a) => serde_json::to_value(a),
            Command::PointLines(a) | Command::Locus(a) => serde_json::to_value(a),
            Command::Contact(a) => serde_json::to_value(a),
            Command::Bound(a) => serde_json::to_value(a),
            Command::Oracle(a) => serde_json::to_value(a),
            Command::ArcIdeal(a) => serde_json::to_value(a),
            Command::FfLines(a) => serde_json::to_value(a),
            Command::Verify(a) => serde_json::to_value(a),
        };
        v.expect("argument structs serialize")
    }
}

/// A line count together with its certificate class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPayload {
    #[serde(rename = "type")]
    pub degrees: Vec<u32>,
    pub ambient: u32,
    pub class: Vec<ClassTerm>,
    #[serde(with = "arcline::bigint_string")]
    pub count: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_count: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub codim: u32,
    #[serde(with = "arcline::bigint_string")]
    pub degree: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPoly {
    pub weight: u32,
    pub polynomial: String,
}

/// Result of a successful run, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Lines(CountPayload),
    PointLines(CountPayload),
    Locus {
        #[serde(rename = "type")]
        degrees: Vec<u32>,
        ambient: u32,
        class: Vec<ClassTerm>,
    },
    Contact {
        ambient: u32,
        degree: u32,
        order: u32,
        class: Vec<ClassTerm>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sweep: Option<Sweep>,
    },
    Bound {
        dim: u32,
        codim: Option<u32>,
        min_degree: u32,
        bound: Option<String>,
        extremal_type: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<TypeCount>>,
    },
    Oracle {
        #[serde(rename = "type")]
        degrees: Vec<u32>,
        ambient: u32,
        /// `lines` or `fano-degree`.
        quantity: String,
        value: String,
    },
    ArcIdeal {
        ambient: Option<u32>,
        order: u32,
        coefficients: Vec<WeightedPoly>,
    },
    FfLines {
        prime: u64,
        ambient: u32,
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        through: Option<Vec<u64>>,
        count: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lines: Option<Vec<FFLine>>,
        caveat: String,
    },
    Verify {
        max_ambient: u32,
        checks: Vec<CheckResult>,
        passed: usize,
        failed: usize,
    },
}

/// Structured domain error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: String,
    pub message: String,
}

impl From<&ArcError> for Diagnostic {
    fn from(e: &ArcError) -> Self {
        let kind = match e {
            ArcError::Syntax { .. } => "syntax",
            ArcError::VariableOutOfRange { .. } => "variable-out-of-range",
            ArcError::PositiveWeight { .. } => "positive-weight",
            ArcError::NotHomogeneous => "not-homogeneous",
            ArcError::AmbientMismatch { .. } => "ambient-mismatch",
            ArcError::InexactDivision { .. } => "inexact-division",
            ArcError::InvalidType(_) => "invalid-type",
            ArcError::InvalidArc(_) => "invalid-arc",
            ArcError::DimensionCondition { .. } => "dimension-condition",
            ArcError::InfinitelyManyLines { .. } => "infinitely-many-lines",
            ArcError::NoLinesExpected { .. } => "no-lines-expected",
            ArcError::NonPure { .. } => "non-pure",
            ArcError::NotSymmetric { .. } => "not-symmetric",
            ArcError::NegativeDimension(_) => "negative-dimension",
            ArcError::NotPrime(_) => "not-prime",
            ArcError::PointNotOnVariety => "point-not-on-variety",
            ArcError::InvalidArgument(_) => "invalid-argument",
            ArcError::Internal(_) => "internal",
        };
        Diagnostic {
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

/// Everything one invocation produced. `wall_time_us` is the only field
/// that varies between identical runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Value,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<Diagnostic>,
    pub wall_time_us: u64,
}

/// Output of [`dispatch`].
#[derive(Clone, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    /// Absent on usage errors, help and version.
    pub report: Option<RunReport>,
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                    report: None,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                    report: None,
                },
            };
        }
    };

    let json = cli.command.json();
    let start = Instant::now();
    let result = run(&cli.command);
    let wall_time_us = start.elapsed().as_micros() as u64;

    let (payload, error) = match result {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(Diagnostic::from(&e))),
    };
    let report = RunReport {
        command: cli.command.name().into(),
        argv: argv.iter().skip(1).cloned().collect(),
        inputs: cli.command.inputs(),
        ok: error.is_none(),
        result: payload,
        error,
        wall_time_us,
    };

    let mut stdout = String::new();
    let mut stderr = String::new();
    if json {
        stdout = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    } else if let Some(p) = &report.result {
        stdout = render(p);
    }
    if let Some(d) = &report.error {
        if !json {
            stderr = format!("error[{}]: {}\n", d.kind, d.message);
        }
    }
    let code = match (&report.result, &report.error) {
        (Some(Payload::Verify { failed, .. }), _) if *failed > 0 => 1,
        (_, Some(_)) => 1,
        _ => 0,
    };
    Outcome {
        stdout,
        stderr,
        code,
        report: Some(report),
    }
}

fn terms(c: &ChowClass) -> Vec<ClassTerm> {
    c.to_terms()
}

fn count_payload(a: &TypeArgs, lc: LineCount) -> CountPayload {
    CountPayload {
        degrees: a.degrees.clone(),
        ambient: a.ambient,
        class: terms(&lc.certificate),
        count: lc.value,
        oracle_count: None,
        agrees: None,
    }
}

fn run(cmd: &Command) -> Result<Payload> {
    match cmd {
        Command::Lines(a) => {
            let t = CIType::new(a.target.ambient, a.target.degrees.clone())?;
            let lc = count_lines(&t)?;
            let mut p = count_payload(&a.target, lc);
            if a.oracle {
                let o = oracle_count_lines(&t)?;
                p.agrees = Some(o == p.count);
                p.oracle_count = Some(o.to_string());
            }
            Ok(Payload::Lines(p))
        }
        Command::PointLines(a) => {
            let t = CIType::new(a.ambient, a.degrees.clone())?;
            Ok(Payload::PointLines(count_payload(
                a,
                lines_through_point(&t)?,
            )))
        }
        Command::Locus(a) => {
            let t = CIType::new(a.ambient, a.degrees.clone())?;
            Ok(Payload::Locus {
                degrees: a.degrees.clone(),
                ambient: a.ambient,
                class: terms(&line_locus_class(&t)),
            })
        }
        Command::Contact(a) => {
            let c = contact_class(a.ambient, a.degree, a.order)?;
            let sweep = match a.sweep {
                Some(codim) => Some(Sweep {
                    codim,
                    degree: swept_degree(&c, codim)?,
                }),
                None => None,
            };
            Ok(Payload::Contact {
                ambient: a.ambient,
                degree: a.degree,
                order: a.order,
                class: terms(&c),
                sweep,
            })
        }
        Command::Bound(a) => {
            let q = BoundQuery::new(a.dim, a.codim, a.min_degree)?;
            let b = bound(&q);
            // the extremal type attaining the bound
            let extremal = enumerate_extremal(&q, b.as_ref());
            Ok(Payload::Bound {
                dim: a.dim,
                codim: a.codim,
                min_degree: q.min_degree(),
                bound: b.map(|v| v.to_string()),
                extremal_type: extremal,
                table: a.table.then(|| enumerate_types(&q)),
            })
        }
        Command::Oracle(a) => {
            let t = CIType::new(a.ambient, a.degrees.clone())?;
            let (quantity, value) = if a.fano {
                ("fano-degree", fano_degree(&t)?)
            } else {
                ("lines", oracle_count_lines(&t)?)
            };
            Ok(Payload::Oracle {
                degrees: a.degrees.clone(),
                ambient: a.ambient,
                quantity: quantity.into(),
                value: value.to_string(),
            })
        }
        Command::ArcIdeal(a) => {
            let f = match a.ambient {
                Some(n) => parse_poly(&a.poly, n)?,
                None => a.poly.parse::<SparsePoly>()?,
            };
            let sys = arc_ideal(&f, a.order)?;
            Ok(Payload::ArcIdeal {
                ambient: a.ambient,
                order: a.order,
                coefficients: sys
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| WeightedPoly {
                        weight: i as u32,
                        polynomial: c.to_string(),
                    })
                    .collect(),
            })
        }
        Command::FfLines(a) => {
            let gens = a
                .polys
                .iter()
                .map(|s| parse_poly(s, a.ambient))
                .collect::<Result<Vec<_>>>()?;
            let cfg = FFConfig::new(a.prime, a.ambient, gens)?;
            let (count, lines) = match &a.through {
                Some(pt) => (count_lines_through_point_ff(&cfg, pt)?, None),
                None if a.list => {
                    let found = lines_ff(&cfg);
                    (found.len() as u64, Some(found))
                }
                None => (count_lines_ff(&cfg), None),
            };
            Ok(Payload::FfLines {
                prime: a.prime,
                ambient: a.ambient,
                generators: cfg.generators().iter().map(ToString::to_string).collect(),
                through: a.through.clone(),
                count,
                lines,
                caveat: RATIONAL_CAVEAT.into(),
            })
        }
        Command::Verify(a) => {
            if a.max_ambient < 3 {
                return Err(ArcError::InvalidArgument(
                    "--max-ambient must be at least 3".into(),
                ));
            }
            let threads = match std::env::var(THREADS_ENV) {
                Ok(s) => Some(
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&k| k > 0)
                        .ok_or_else(|| {
                            ArcError::InvalidArgument(format!(
                                "{THREADS_ENV} must be a positive integer, got {s:?}"
                            ))
                        })?,
                ),
                Err(_) => None,
            };
            let checks = verify::run(a.max_ambient, threads).map_err(ArcError::Internal)?;
            let passed = checks.iter().filter(|c| c.passed).count();
            Ok(Payload::Verify {
                max_ambient: a.max_ambient,
                failed: checks.len() - passed,
                passed,
                checks,
            })
        }
    }
}

fn enumerate_extremal(q: &BoundQuery, b: Option<&BigInt>) -> Option<Vec<u32>> {
    let b = b?;
    let codims: Vec<u32> = match q.codim() {
        Some(r) => vec![r],
        None => (1..=q.dim()).collect(),
    };
    codims.into_iter().find_map(|r| {
        let t = extremal_type(q.dim(), r, q.min_degree())?;
        let v: BigInt = t.iter().map(|&d| arcline::locus::factorial(d)).product();
        (&v == b).then_some(t)
    })
}

fn fmt_type(d: &[u32]) -> String {
    let s: Vec<String> = d.iter().map(u32::to_string).collect();
    format!("({})", s.join(","))
}

fn fmt_class(c: &[ClassTerm]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let pow = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => format!("*{v}"),
        _ => format!("*{v}^{e}"),
    };
    c.iter()
        .map(|t| format!("{}{}{}", t.coeff, pow("h0", t.a), pow("h1", t.b)))
        .collect::<Vec<_>>()
        .join(" + ")
        .replace("+ -", "- ")
}

/// Human-readable rendering of a payload.
pub fn render(p: &Payload) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match p {
        Payload::Lines(c) => {
            line(format!(
                "{} lines on {} in P^{}",
                c.count,
                fmt_type(&c.degrees),
                c.ambient
            ));
            line(format!("class: {}", fmt_class(&c.class)));
            if let (Some(o), Some(ok)) = (&c.oracle_count, c.agrees) {
                line(format!(
                    "schubert oracle: {o} ({})",
                    if ok { "agrees" } else { "DISAGREES" }
                ));
            }
        }
        Payload::PointLines(c) => {
            line(format!(
                "{} lines through a general point of {} in P^{}",
                c.count,
                fmt_type(&c.degrees),
                c.ambient
            ));
            line(format!("class: {}", fmt_class(&c.class)));
        }
        Payload::Locus { class, .. } => line(fmt_class(class)),
        Payload::Contact { class, sweep, .. } => {
            line(format!("class: {}", fmt_class(class)));
            if let Some(s) = sweep {
                line(format!(
                    "swept degree (fiber codim {}): {}",
                    s.codim, s.degree
                ));
            }
        }
        Payload::Bound {
            bound,
            extremal_type,
            table,
            ..
        } => {
            match (bound, extremal_type) {
                (Some(b), Some(t)) => {
                    line(format!("bound: {b} (attained by type {})", fmt_type(t)))
                }
                (Some(b), None) => line(format!("bound: {b}")),
                _ => line("bound: none (no admissible types)".into()),
            }
            if let Some(rows) = table {
                for r in rows {
                    line(format!(
                        "{:<16} P^{:<4} {}",
                        fmt_type(&r.degrees),
                        r.ambient,
                        r.count
                    ));
                }
            }
        }
        Payload::Oracle {
            quantity, value, ..
        } => line(format!("{quantity}: {value}")),
        Payload::ArcIdeal { coefficients, .. } => {
            for c in coefficients {
                line(c.polynomial.clone());
            }
        }
        Payload::FfLines {
            prime,
            through,
            count,
            lines,
            caveat,
            ..
        } => {
            let at = if through.is_some() {
                " through the point"
            } else {
                ""
            };
            line(format!("{count} F_{prime}-rational lines{at} ({caveat})"));
            for l in lines.iter().flatten() {
                line(format!("  span{{{:?}, {:?}}}", l.base, l.direction));
            }
        }
        Payload::Verify {
            checks,
            passed,
            failed,
            ..
        } => {
            for c in checks {
                line(format!(
                    "{}  {:<48} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            line(format!(
                "{} checks: {passed} passed, {failed} failed",
                checks.len()
            ));
        }
    }
    out
}
