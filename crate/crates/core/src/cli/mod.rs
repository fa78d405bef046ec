//! Command-line front end: figure data, the verification suite and single
//! point probes.

mod config;
pub mod figure;
pub mod probe;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use config::FileConfig;
use figure::{FigureId, GridOverride, SweepSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(
    name = "squeeze-jump",
    version,
    about = "Squeezing from two sudden frequency jumps"
)]
pub struct Cli {
    /// JSON file with default values for any flag; flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the data behind a figure as CSV
    Figure(FigureArgs),
    /// Run the invariant and oracle suite
    Verify(VerifyArgs),
    /// Evaluate every observable at one parameter point
    Probe(ProbeArgs),
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub id: FigureId,
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Single ω₁ curve instead of the default set
    #[arg(long)]
    pub omega1: Option<f64>,
    /// Single τ curve instead of the default set
    #[arg(long)]
    pub tau: Option<f64>,
    /// Quadrature angle
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub secondary_start: Option<f64>,
    #[arg(long)]
    pub secondary_stop: Option<f64>,
    #[arg(long)]
    pub secondary_count: Option<usize>,
    /// Directory for one CSV per curve; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG line plot (needs --out)
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random samples per randomized check
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fock truncation of the oracle checks
    #[arg(long)]
    pub fock_n: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub omega0: Option<f64>,
    #[arg(long)]
    pub omega1: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "squeeze-jump: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Figure(a) => {
            let spec = SweepSpec {
                id: a.id,
                omega0: a.omega0.or(file.omega0).unwrap_or(1.0),
                omega1: a.omega1.or(file.omega1),
                tau: a.tau.or(file.tau),
                lambda: a.lambda.or(file.lambda),
                grid: GridOverride {
                    start: a.start.or(file.start),
                    stop: a.stop.or(file.stop),
                    count: a.count.or(file.count),
                },
                secondary: GridOverride {
                    start: a.secondary_start.or(file.secondary_start),
                    stop: a.secondary_stop.or(file.secondary_stop),
                    count: a.secondary_count.or(file.secondary_count),
                },
            };
            let series = figure::build(&spec)?;
            let svg = a.svg || file.svg.unwrap_or(false);
            match a.out.or(file.out) {
                Some(dir) => figure::write_dir(&dir, spec.id, &series, svg)?,
                None if svg => return usage("--svg needs --out"),
                None => figure::write_stream(out, &series)?,
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let n = a.n.or(file.n).unwrap_or(verify::DEFAULT_SAMPLES);
            if n == 0 {
                return usage("--n must be at least 1");
            }
            let fock_n = match a.fock_n.or(file.fock_n) {
                Some(k) => k,
                None => env_truncation()?,
            };
            let seed = a.seed.or(file.seed).unwrap_or(verify::DEFAULT_SEED);
            let report = verify::run_suite(n, seed, fock_n);
            if a.json || file.json.unwrap_or(false) {
                serde_json::to_writer_pretty(&mut *out, &report)?;
                writeln!(out)?;
            } else {
                report.write_text(out)?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Probe(a) => {
            let need = |flag: Option<f64>, key: Option<f64>, name: &str| {
                flag.or(key)
                    .map_or_else(|| usage(format!("--{name} is required")), Ok)
            };
            let omega0 = need(a.omega0, file.omega0, "omega0")?;
            let omega1 = need(a.omega1, file.omega1, "omega1")?;
            let tau = need(a.tau, file.tau, "tau")?;
            let t = need(a.t, file.t, "t")?;
            let lambda = a.lambda.or(file.lambda).unwrap_or(0.0);
            let record = probe::probe(omega0, omega1, tau, t, lambda)?;
            if a.json || file.json.unwrap_or(false) {
                serde_json::to_writer_pretty(&mut *out, &record)?;
                writeln!(out)?;
            } else {
                record.write_text(out)?;
            }
            Ok(0)
        }
    }
}

/// Oracle truncation from `SQUEEZE_JUMP_FOCK_N`, else the default.
fn env_truncation() -> Result<usize, CliError> {
    match std::env::var(crate::fock::TRUNCATION_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{} must be an integer, got {v:?}",
                crate::fock::TRUNCATION_ENV
            ))
        }),
        Err(_) => Ok(crate::fock::DEFAULT_TRUNCATION),
    }
}
