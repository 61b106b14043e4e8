mod io_util;
mod run;

use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Batch,
    Stream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Values,
    Coeffs,
    Bounds,
    Convergence,
}

/// Local spline interpolation of sampled data, with exact endpoint
/// derivative matching and real-time (sliding window) evaluation.
#[derive(Debug, Parser)]
#[command(name = "splinterp", version)]
pub struct Cli {
    /// Spline order m (>= 3)
    #[arg(long)]
    pub order: usize,

    /// Input CSV with header `y,f` (stdin when omitted)
    #[arg(long = "in")]
    pub input: Option<PathBuf>,

    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Probe points per knot interval (the closing endpoint is emitted once
    /// at the end)
    #[arg(long, conflicts_with = "eval_at")]
    pub eval_count: Option<usize>,

    /// Explicit comma-separated evaluation abscissas
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eval_at: Option<Vec<f64>>,

    /// Endpoint derivative source: `auto` (divided differences from the
    /// samples) or a CSV file with header `end,order,value`
    #[arg(long, default_value = "auto")]
    pub derivs: String,

    #[arg(long, value_enum, default_value_t = Mode::Batch)]
    pub mode: Mode,

    #[arg(long, value_enum, default_value_t = Emit::Values)]
    pub emit: Emit,

    /// Also emit derivative columns d1..dk (batch values mode)
    #[arg(long, default_value_t = 0)]
    pub deriv_order: usize,
}

/// Exit code 1: numerical failure. Exit code 2: I/O, parse or usage failure.
#[derive(Debug)]
pub enum CliError {
    Numeric(splinterp::Error),
    Parse(String),
    Io(String),
    Usage(String),
}

impl From<splinterp::Error> for CliError {
    fn from(e: splinterp::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Numeric(e) => write!(f, "numerical failure: {e}"),
            CliError::Parse(msg) => write!(f, "parse failure: {msg}"),
            CliError::Io(msg) => write!(f, "I/O failure: {msg}"),
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(&cli) {
        Ok(()) => ExitCode::from(0),
        Err(err) => {
            eprintln!("splinterp: {err}");
            match err {
                CliError::Numeric(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
