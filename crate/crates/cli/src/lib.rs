//! `ballinterp`: tables and figure data for linear interpolation on balls.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O failure while writing output, or a failed search |
//! | 2 | unparsable input or invalid arguments |
//! | 3 | degenerate simplex |
//! | 4 | spline requested outside its covered range |

pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ball_interp::absorption::SANDWICH_TOLERANCE;
use ball_interp::io::{parse_ball, read_simplex};
use ball_interp::{
    absorption_index_ball, critical_points, lagrange_basis, minimize_norm, norm_lower_bound_mc,
    one_point_witness, projector_norm, psi, regular_norm, sandwich_bounds, spline_bound, Ball,
    Error, SearchConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{round_json, sig, DEFAULT_PRECISION, MAX_PRECISION, MIN_PRECISION};

#[derive(Debug, Parser)]
#[command(
    name = "ballinterp",
    version,
    about = "Linear interpolation projectors on Euclidean balls"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format. Tables default to CSV, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Significant digits for printed numbers (6 to 17).
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Montecarlo,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Projector norm for a simplex and a ball.
    Norm {
        simplex: PathBuf,
        /// `c1,...,cn;R`, inline JSON, or a path to a JSON file.
        #[arg(long)]
        ball: String,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form rows for the regular inscribed simplex.
    RegularTable {
        /// Dimensions such as `7`, `1..15` or `1..15,50,100`.
        dims: Vec<String>,
    },
    /// The function ψ on a uniform grid over [0, n+1] plus its marker points.
    PsiCurve {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 401)]
        samples: usize,
    },
    /// The gap d_n = √(n+1) - ‖P‖ over a range of n, optionally with the spline bound.
    DnSeries {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        spline: bool,
    },
    /// Random-restart search for nodes on the unit sphere with a small projector norm.
    Minimize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        decay: Option<f64>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Absorption index and the norm sandwich check.
    Xi {
        simplex: PathBuf,
        #[arg(long)]
        ball: String,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSimplex { .. } => 3,
            Error::SplineRange { .. } => 4,
            Error::SearchFailed(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct MonteCarloReport {
    lower_bound: f64,
    samples: usize,
    seed: u64,
}

#[derive(Serialize)]
struct PsiRow {
    kind: &'static str,
    t: f64,
    psi: f64,
}

#[derive(Serialize)]
struct DnRow {
    n: u64,
    d_n: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    l_n: Option<f64>,
}

#[derive(Serialize)]
struct Sandwich {
    lower: f64,
    upper: f64,
    holds: bool,
    right_tight: bool,
    one_point: bool,
}

#[derive(Serialize)]
struct XiReport {
    #[serde(flatten)]
    result: ball_interp::AbsorptionResult,
    norm: f64,
    sandwich: Sandwich,
}

/// Runs a parsed command and returns the text destined for the output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let precision = cli.output.precision;
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
        return Err(CliError::usage(format!(
            "precision must be in {MIN_PRECISION}..={MAX_PRECISION}, got {precision}"
        )));
    }
    let table_format = cli.output.format.unwrap_or(Format::Csv);
    let object_format = cli.output.format.unwrap_or(Format::Json);
    let p = precision;
    match &cli.command {
        Command::Norm {
            simplex,
            ball,
            method,
            samples,
            seed,
        } => {
            let simplex = read_simplex(simplex)?;
            let ball = load_ball(ball)?;
            match method {
                Method::Exact => {
                    let cert = projector_norm(&simplex, &ball)?;
                    if object_format == Format::Json {
                        return json(&cert, p);
                    }
                    let coords: Vec<String> =
                        (1..=simplex.dim()).map(|i| format!("x{i}")).collect();
                    let signs: Vec<String> =
                        cert.signs.entries().iter().map(i8::to_string).collect();
                    let point: Vec<String> =
                        cert.extremal_point.iter().map(|&x| sig(x, p)).collect();
                    Ok(format!(
                        "value,k,signs,{}\n{},{},{},{}\n",
                        coords.join(","),
                        sig(cert.value, p),
                        cert.k,
                        signs.join(" "),
                        point.join(",")
                    ))
                }
                Method::Montecarlo => {
                    let lower_bound = norm_lower_bound_mc(&simplex, &ball, *samples, *seed)?;
                    if object_format == Format::Json {
                        return json(
                            &MonteCarloReport {
                                lower_bound,
                                samples: *samples,
                                seed: *seed,
                            },
                            p,
                        );
                    }
                    Ok(format!(
                        "lower_bound,samples,seed\n{},{samples},{seed}\n",
                        sig(lower_bound, p)
                    ))
                }
            }
        }
        Command::RegularTable { dims } => {
            let dims = parse_dims(dims)?;
            let rows = dims
                .iter()
                .map(|&n| regular_norm(n))
                .collect::<Result<Vec<_>, _>>()?;
            if table_format == Format::Json {
                return json(&rows, p);
            }
            let mut out = String::from("n,t_minus,a,psi_a,psi_a1,norm,k_star,d_n\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    sig(r.t_minus, p),
                    r.a,
                    sig(r.psi_a, p),
                    sig(r.psi_a_plus_1, p),
                    sig(r.norm, p),
                    r.k_star,
                    sig(r.d_n, p)
                );
            }
            Ok(out)
        }
        Command::PsiCurve { n, samples } => {
            if *samples < 2 {
                return Err(CliError::usage(format!(
                    "samples must be at least 2, got {samples}"
                )));
            }
            if *n == 0 {
                return Err(CliError::usage("n must be at least 1"));
            }
            let m = (n + 1) as f64;
            let mut rows = Vec::with_capacity(samples + 4);
            for i in 0..*samples {
                // the last grid point is exactly n + 1
                let t = if i + 1 == *samples {
                    m
                } else {
                    m * i as f64 / (samples - 1) as f64
                };
                rows.push(PsiRow {
                    kind: "grid",
                    t,
                    psi: psi(*n, t)?,
                });
            }
            let cp = critical_points(*n)?;
            for (kind, t) in [
                ("t_minus", cp.t_minus),
                ("t_plus", cp.t_plus),
                ("a", cp.a as f64),
                ("a_plus_1", (cp.a + 1) as f64),
            ] {
                rows.push(PsiRow {
                    kind,
                    t,
                    psi: psi(*n, t)?,
                });
            }
            if table_format == Format::Json {
                return json(&rows, p);
            }
            let mut out = String::from("kind,t,psi\n");
            for r in rows {
                let _ = writeln!(out, "{},{},{}", r.kind, sig(r.t, p), sig(r.psi, p));
            }
            Ok(out)
        }
        Command::DnSeries { from, to, spline } => {
            if *from < 1 || from > to {
                return Err(CliError::usage(format!(
                    "need 1 <= from <= to, got {from}..{to}"
                )));
            }
            let bound = if *spline {
                Some(spline_bound(*from, *to)?)
            } else {
                None
            };
            let rows = (*from..=*to)
                .map(|n| {
                    Ok(DnRow {
                        n,
                        d_n: regular_norm(n)?.d_n,
                        l_n: bound.as_ref().and_then(|b| b.eval(n)),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            if table_format == Format::Json {
                return json(&rows, p);
            }
            let mut out = String::from(if *spline { "n,d_n,l_n\n" } else { "n,d_n\n" });
            for r in rows {
                let _ = write!(out, "{},{}", r.n, sig(r.d_n, p));
                if let Some(l) = r.l_n {
                    let _ = write!(out, ",{}", sig(l, p));
                }
                out.push('\n');
            }
            Ok(out)
        }
        Command::Minimize {
            n,
            restarts,
            iterations,
            step,
            decay,
            tolerance,
            seed,
            epsilon,
        } => {
            let mut config = SearchConfig::new(*n);
            config.restarts = restarts.unwrap_or(config.restarts);
            config.max_iterations = iterations.unwrap_or(config.max_iterations);
            config.initial_step = step.unwrap_or(config.initial_step);
            config.step_decay = decay.unwrap_or(config.step_decay);
            config.tolerance = tolerance.unwrap_or(config.tolerance);
            config.seed = seed.unwrap_or(config.seed);
            config.epsilon = epsilon.unwrap_or(config.epsilon);
            config.validate()?;
            let result = minimize_norm(&config)?;
            if object_format == Format::Json {
                let mut value = serde_json::to_value(&result).expect("serializable");
                round_json(&mut value, p);
                // vertices are reported exactly so the simplex can be re-evaluated
                value["best_simplex"] =
                    serde_json::to_value(&result.best_simplex).expect("serializable");
                return Ok(to_json_text(&value));
            }
            let mut out = String::from("restart,best_norm\n");
            for (i, v) in result.history.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", sig(*v, p));
            }
            Ok(out)
        }
        Command::Xi { simplex, ball } => {
            let simplex = read_simplex(simplex)?;
            let ball = load_ball(ball)?;
            let result = absorption_index_ball(&simplex, &ball)?;
            let cert = projector_norm(&simplex, &ball)?;
            let witness = one_point_witness(&cert, &lagrange_basis(&simplex)?).is_some();
            let (lower, upper) = sandwich_bounds(cert.value, simplex.dim() as u64);
            let report = XiReport {
                norm: cert.value,
                sandwich: Sandwich {
                    lower,
                    upper,
                    holds: lower - SANDWICH_TOLERANCE <= result.xi
                        && result.xi <= upper + SANDWICH_TOLERANCE,
                    right_tight: (upper - result.xi).abs() <= SANDWICH_TOLERANCE,
                    one_point: witness,
                },
                result,
            };
            if object_format == Format::Json {
                return json(&report, p);
            }
            let s = &report.sandwich;
            Ok(format!(
                "xi,binding_face,norm,lower,upper,holds,right_tight,one_point\n{},{},{},{},{},{},{},{}\n",
                sig(report.result.xi, p),
                report.result.binding_face,
                sig(report.norm, p),
                sig(s.lower, p),
                sig(s.upper, p),
                s.holds,
                s.right_tight,
                s.one_point
            ))
        }
    }
}

/// Executes the command and writes its output. Returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let text = match execute(cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    let written = match &cli.output.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
        }
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            1
        }
    }
}

/// Accepts `c1,...,cn;R`, inline JSON, or a path to a JSON or compact ball file.
fn load_ball(arg: &str) -> Result<Ball, CliError> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') || trimmed.contains(';') {
        return Ok(parse_ball(trimmed)?);
    }
    let path = Path::new(trimmed);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read ball file {}: {e}", path.display())))?;
    Ok(parse_ball(&text)?)
}

/// Expands `7`, `1..15` and comma-separated mixtures of them.
pub fn parse_dims(items: &[String]) -> Result<Vec<u64>, CliError> {
    let mut dims = Vec::new();
    for token in items.iter().flat_map(|s| s.split(',')) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| CliError::usage(format!("not a dimension >= 1: {s:?}")))
        };
        match token.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(CliError::usage(format!("empty range {token:?}")));
                }
                dims.extend(lo..=hi);
            }
            None => dims.push(parse(token)?),
        }
    }
    Ok(dims)
}

fn json<T: Serialize>(value: &T, precision: usize) -> Result<String, CliError> {
    let mut value = serde_json::to_value(value).expect("serializable");
    round_json(&mut value, precision);
    Ok(to_json_text(&value))
}

fn to_json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}
