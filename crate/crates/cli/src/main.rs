//! `spinchain` — runs heat-flow experiments on small qubit chains, through
//! either the exact propagator or the compiled-circuit backend, and emits
//! CSV trajectories plus human-readable summaries.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 calibration or positivity failure.

use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};

mod calibfile;
mod commands;
mod config;
mod csvout;

use spinchain_core::Error;

#[derive(Parser)]
#[command(
    name = "spinchain",
    version,
    about = "Exact and circuit-compiled heat-flow experiments on correlated qubit chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)] // constructed once at startup
enum Command {
    /// Sweep a chain state over evolution times and emit a CSV trajectory.
    Run(RunArgs),
    /// Solve a preset's preparation recipe, score it, and persist the result.
    Calibrate(CalibrateArgs),
    /// Check the compiled circuits against the exact propagators.
    VerifyCircuits,
    /// Side-by-side correlated vs uncorrelated two-qubit demonstration.
    TwoQubit(TwoQubitArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named preset: classical, reversal, preferential_pumping, local_effects.
    #[arg(long)]
    case: Option<String>,
    /// Evolution backend: exact (default) or circuit.
    #[arg(long)]
    backend: Option<String>,
    /// Exchange coupling strength (default 1).
    #[arg(long, allow_hyphen_values = true)]
    coupling: Option<f64>,
    /// Qubit splitting; defaults to the calibrated value for presets, 1 otherwise.
    #[arg(long)]
    epsilon: Option<f64>,
    /// First evolution time of the sweep (default 0).
    #[arg(long, allow_hyphen_values = true)]
    tau_start: Option<f64>,
    /// Last evolution time of the sweep (default π).
    #[arg(long, allow_hyphen_values = true)]
    tau_stop: Option<f64>,
    /// Number of grid points, at least 2 (default 101).
    #[arg(long)]
    tau_points: Option<usize>,
    /// CSV destination; omitted, the CSV goes to stdout and the summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Explicit local temperatures, comma-separated (one per qubit).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    temps: Option<Vec<f64>>,
    /// Adjacent-pair correlations for --temps, comma-separated (default zeros).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alphas: Option<Vec<f64>>,
    /// Base temperatures of a pulse preparation (exactly three).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    base_temps: Option<Vec<f64>>,
    /// Pulse durations tau_01,tau_12 for --base-temps (default zeros).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    taus: Option<Vec<f64>>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Preset to calibrate: classical, reversal, preferential_pumping, local_effects.
    #[arg(long)]
    case: String,
    /// Qubit splitting (defaults to the calibrated value).
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct TwoQubitArgs {
    /// CSV destination; omitted, the CSV goes to stdout and the summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command failure carrying the process exit code.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Positivity(_) | Error::Calibration(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn main() {
    // Die quietly on a closed pipe (`spinchain run | head`) instead of
    // panicking mid-print; Rust starts with SIGPIPE ignored.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => config::resolve(&args).and_then(commands::run::execute),
        Command::Calibrate(args) => commands::calibrate::execute(&args.case, args.epsilon),
        Command::VerifyCircuits => commands::verify::execute(),
        Command::TwoQubit(args) => commands::two_qubit::execute(args.out),
    };
    match outcome {
        Ok(code) => process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            process::exit(f.code);
        }
    }
}
