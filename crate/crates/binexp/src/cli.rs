//! Command-line front end.
//!
//! [`run`] does all the work and returns what should be printed along with
//! the exit status, so it can be tested without spawning a process.

use std::ffi::OsString;
use std::fmt::Write;

use binexp_core::{
    briggs_chain, div_qr, egyptian_mul, heron_run, log_base, pow_rational, pow_real, Error,
    ErrorKind, RationalExponent, SqrtMode, ToleranceConfig, TraceLog,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::json::to_json;
use crate::render::{format_real, render_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;

/// Arithmetic by doubling, halving, squaring and square roots.
#[derive(Debug, Parser)]
#[command(name = "binexp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the step-by-step trace after the result.
    #[arg(long, value_enum, default_value_t = TraceFormat::Off, global = true)]
    trace: TraceFormat,

    /// Heron stopping threshold.
    #[arg(long, global = true, value_name = "EPS")]
    heron_eps: Option<f64>,

    /// Distance from 1 at which the power loops stop.
    #[arg(long, global = true, value_name = "EPS")]
    pow_eps: Option<f64>,

    /// Cap on iterations of any single loop.
    #[arg(long, global = true, value_name = "N")]
    max_iterations: Option<u32>,

    /// Use the absolute Heron stopping test |x - x'| < eps.
    #[arg(long, global = true)]
    paper_faithful: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceFormat {
    Off,
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SqrtModeArg {
    CorrectlyRounded,
    Heron,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product A*B by doubling.
    Mul { a: u64, b: u64 },
    /// Quotient and remainder of A/D by halving.
    Divmod { a: u64, d: u64 },
    /// Square root by Heron's rule.
    #[command(allow_negative_numbers = true)]
    Sqrt { a: f64 },
    /// A raised to P/Q, or to a real exponent with --exp.
    #[command(allow_negative_numbers = true)]
    Pow {
        a: f64,
        p: Option<u64>,
        q: Option<u64>,
        /// Real exponent, instead of P and Q.
        #[arg(long = "exp", value_name = "T", conflicts_with_all = ["p", "q"])]
        exp: Option<f64>,
    },
    /// Binary expansion of log base B of A, for 1 <= A < B.
    #[command(allow_negative_numbers = true)]
    Log { b: f64, a: f64 },
    /// Number of iterated square roots of B that stay above 1.
    #[command(allow_negative_numbers = true)]
    Briggs {
        b: f64,
        #[arg(long, value_enum, default_value_t = SqrtModeArg::CorrectlyRounded)]
        sqrt_mode: SqrtModeArg,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Domain => EXIT_DOMAIN,
        ErrorKind::Overflow => EXIT_OVERFLOW,
        ErrorKind::NonConvergence => EXIT_NON_CONVERGENCE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };

    let defaults = ToleranceConfig::default();
    let cfg = ToleranceConfig {
        heron_eps: cli.heron_eps.unwrap_or(defaults.heron_eps),
        pow_eps: cli.pow_eps.unwrap_or(defaults.pow_eps),
        max_iterations: cli.max_iterations.unwrap_or(defaults.max_iterations),
        heron_relative_mode: !cli.paper_faithful,
    };
    let positive = |eps: f64| eps.is_finite() && eps > 0.0;
    if !positive(cfg.heron_eps) {
        return Outcome::usage("error: --heron-eps must be positive and finite\n");
    }
    if !positive(cfg.pow_eps) {
        return Outcome::usage("error: --pow-eps must be positive and finite\n");
    }
    if cfg.max_iterations == 0 {
        return Outcome::usage("error: --max-iterations must be at least 1\n");
    }

    let mut log = TraceLog::new();
    let trace = (cli.trace != TraceFormat::Off).then_some(&mut log);
    let result = match execute(&cli.command, &cfg, trace) {
        Ok(line) => line,
        Err(Failure::Usage(message)) => return Outcome::usage(message),
        Err(Failure::Compute(err)) => {
            return Outcome {
                code: exit_code(err.kind()),
                stdout: String::new(),
                stderr: format!("error: {err}\n"),
            }
        }
    };

    let mut stdout = String::new();
    match cli.trace {
        TraceFormat::Off => writeln!(stdout, "{result}").unwrap(),
        TraceFormat::Text => {
            writeln!(stdout, "{result}").unwrap();
            stdout.push_str(&render_text(&log).expect("log matches the command"));
        }
        TraceFormat::Json => writeln!(stdout, "{}", to_json(&log)).unwrap(),
    }
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Compute(err)
    }
}

fn execute(
    command: &Command,
    cfg: &ToleranceConfig,
    trace: Option<&mut TraceLog>,
) -> Result<String, Failure> {
    Ok(match *command {
        Command::Mul { a, b } => egyptian_mul(a, b, trace)?.to_string(),
        Command::Divmod { a, d } => {
            let qr = div_qr(a, d, trace)?;
            format!("{} {}", qr.quotient, qr.remainder)
        }
        Command::Sqrt { a } => format_real(heron_run(a, cfg, trace)?.root),
        Command::Pow { a, p, q, exp } => {
            let value = match (p, q, exp) {
                (Some(p), Some(q), None) => {
                    pow_rational(a, RationalExponent::new(p, q)?, cfg, trace)?
                }
                (None, None, Some(t)) => pow_real(a, t, cfg, trace)?,
                _ => {
                    return Err(Failure::Usage(
                        "error: pow takes either P and Q, or --exp T\n".to_owned(),
                    ))
                }
            };
            format_real(value)
        }
        Command::Log { b, a } => format_real(log_base(b, a, cfg, trace)?.value()),
        Command::Briggs { b, sqrt_mode } => {
            let mode = match sqrt_mode {
                SqrtModeArg::CorrectlyRounded => SqrtMode::CorrectlyRounded,
                SqrtModeArg::Heron => SqrtMode::Heron,
            };
            briggs_chain(b, mode, cfg, trace)?.count().to_string()
        }
    })
}
