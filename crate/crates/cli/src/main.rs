//! `screwline`: evaluate the screw function, locate zeta zeros, sample the
//! screw line and run the identity checks.

mod checks;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, Report, Row, Value};
use screwline_core::analysis::QuadratureSpec;
use screwline_core::screwfn::ScrewContext;
use screwline_core::screwline::ScrewLineContext;
use screwline_core::zeros::{load_zeros, locate_zeros_detailed, ZeroTable};
use screwline_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "screwline", version, about = "Screw function, screw line and explicit-formula checks for the Riemann zeta function")]
#[command(after_help = "Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error, 3 I/O error.\n\n\
CSV columns:\n  g:            t,g,g_prime,minus_two_g\n  sample:       t,z,re,im,abs,flag\n  verify:       check,case,value,target,gap,budget,pass\n  locate-zeros: writes a zero table (one ordinate per line, '#' comments)")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Zero table file; the embedded 100-zero table is used when absent.
    #[arg(long, global = true, env = "SCREWLINE_ZEROS")]
    zeros: Option<PathBuf>,
    /// Comma-separated t values; each command has its own default.
    #[arg(long = "t", global = true, value_delimiter = ',', allow_negative_numbers = true)]
    t_values: Vec<f64>,
    /// Radius T of the z-quadrature.
    #[arg(long, global = true, default_value_t = 2000.0)]
    radius: f64,
    /// Relative tolerance of the z-quadrature.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// g(t), g'(t) and -2g(t).
    G,
    /// Locate zeros up to a height and write them as a zero table.
    LocateZeros {
        #[arg(long)]
        t_max: f64,
        /// Bisection tolerance on each ordinate.
        #[arg(long, default_value_t = 1e-12)]
        refine_tol: f64,
    },
    /// Run identity checks; exit code 0 iff all pass.
    Verify {
        #[arg(value_enum)]
        which: Which,
    },
    /// Samples of the screw line S_t(z) on a real grid.
    Sample {
        /// Grid as start:stop:count, or a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        z_grid: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// P_t(z) -> -g(t) as z -> 0.
    OriginValue,
    /// y P_t(iy) bracket -> -g'(t) as y -> infinity.
    Limit,
    /// Closed form of P_t against its sum over zeros.
    ZeroSumP,
    /// -g(t) against its sum over zeros.
    ZeroSumG,
    /// ||S_t||^2 = -2g(t) by quadrature.
    Norm,
    /// Three-way transform norm identity.
    TransformNorm,
    /// Three-way Weil norm identity.
    WeilNorm,
    All,
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::Parse { .. } | Error::Validation(_) | Error::Domain { .. } | Error::TableTooSmall { .. } | Error::Capacity { .. } => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub struct Session {
    pub config: RunConfig,
    pub line: ScrewLineContext,
    pub table: Arc<ZeroTable>,
}

impl Session {
    fn new(config: RunConfig) -> Result<Self, Failure> {
        let table = match &config.zeros {
            Some(path) => load_zeros(path)?,
            None => ZeroTable::embedded(),
        };
        let t_max = config.t_values.iter().fold(8.0f64, |m, t| m.max(t.abs()));
        if t_max > 18.0 {
            return Err(Failure::usage(format!("t = {t_max} is beyond the sieve range (|t| <= 18)")));
        }
        let line = ScrewLineContext::new(ScrewContext::with_range(t_max)?);
        Ok(Session {
            config,
            line,
            table: Arc::new(table),
        })
    }

    pub fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            radius: self.config.radius,
            rel_tol: self.config.tol,
            ..QuadratureSpec::default()
        }
    }

    pub fn t_values(&self, default: &[f64]) -> Vec<f64> {
        if self.config.t_values.is_empty() {
            default.to_vec()
        } else {
            self.config.t_values.clone()
        }
    }
}

fn cmd_g(session: &Session) -> Result<Report, Failure> {
    let mut report = Report::new("g", &["t", "g", "g_prime", "minus_two_g"]);
    for t in session.t_values(&[0.5, 1.0, 2.0, 3.0]) {
        let g = session.line.screw.g(t)?;
        let g_prime = session.line.screw.g_prime(t).ok();
        report.rows.push(Row(vec![Value::Num(t), Value::Num(g), Value::opt(g_prime), Value::Num(-2.0 * g + 0.0)]));
    }
    Ok(report)
}

fn cmd_locate(t_max: f64, refine_tol: f64, out: Option<&PathBuf>) -> Result<(), Failure> {
    if !(t_max >= 0.0) {
        return Err(Failure::usage("--t-max must be nonnegative"));
    }
    let located = locate_zeros_detailed(t_max, refine_tol)?;
    for w in &located.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "located {} zeros below {t_max} (smooth count {:.2})",
        located.table.len(),
        located.expected_count
    );
    output::write(out, &located.table.to_text())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::usage(format!("bad --z-grid '{spec}': use start:stop:count or a comma list"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [a, b, n] => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            match n {
                0 => Err(bad()),
                1 => Ok(vec![a]),
                _ => Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()),
            }
        }
        [list] => list.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect(),
        _ => Err(bad()),
    }
}

fn cmd_sample(session: &Session, grid: &str) -> Result<Report, Failure> {
    let grid = parse_grid(grid)?;
    let line = session.line.clone().with_exclusion(session.table.clone());
    let mut report = Report::new("sample", &["t", "z", "re", "im", "abs", "flag"]);
    for t in session.t_values(&[1.0]) {
        let values: Vec<_> = {
            use rayon::prelude::*;
            grid.par_iter().map(|&z| (z, line.frak_s(t, z))).collect()
        };
        for (z, v) in values {
            let row = match v {
                Ok(v) => vec![Value::Num(t), Value::Num(z), Value::Num(v.re), Value::Num(v.im), Value::Num(v.norm()), Value::Text(String::new())],
                Err(Error::NearZero { .. }) => {
                    vec![Value::Num(t), Value::Num(z), Value::Null, Value::Null, Value::Null, Value::Text("exclusion_zone".into())]
                }
                Err(e) => return Err(e.into()),
            };
            report.rows.push(Row(row));
        }
    }
    Ok(report)
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    if cli.config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.threads)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    if let Command::LocateZeros { t_max, refine_tol } = cli.command {
        cmd_locate(t_max, refine_tol, cli.config.out.as_ref())?;
        return Ok(true);
    }
    let format = cli.config.format;
    let out = cli.config.out.clone();
    let session = Session::new(cli.config)?;
    let report = match cli.command {
        Command::G => cmd_g(&session)?,
        Command::Sample { z_grid } => cmd_sample(&session, &z_grid)?,
        Command::Verify { which } => checks::run(&session, which)?,
        Command::LocateZeros { .. } => unreachable!(),
    };
    output::write(out.as_ref(), &report.render(format))?;
    Ok(report.pass.unwrap_or(true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
