//! `altafini`: analyses of signed opinion-dynamics models from the command line.
//!
//! Exit codes: 0 success, 1 a cross-check failed, 2 input error,
//! 3 undecidable signal.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use altafini_core::Error;

#[derive(Parser, Debug)]
#[command(name = "altafini", version, about = "Signed opinion dynamics: balance, lifting, limits, rates, spectra")]
pub struct Cli {
    /// Seed for every random choice (initial conditions, probes).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Detection tolerance for limit verdicts.
    #[arg(long, global = true, default_value_t = altafini_core::dynamics::DEFAULT_DETECTION_TOL)]
    pub tol: f64,
    /// Tolerance on absolute row sums when loading matrices.
    #[arg(long, global = true, default_value_t = altafini_core::weight::DEFAULT_ROW_SUM_TOL)]
    pub row_sum_tol: f64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Connectivity, balance and negative-cycle certificates of one graph.
    Analyze(AnalyzeArgs),
    /// Lifted matrix, lifted graph and its component structure.
    Lift(LiftArgs),
    /// Simulate a switching signal.
    Simulate(SimulateArgs),
    /// Classify a periodic signal into its limit regime.
    Classify(ClassifyArgs),
    /// Convergence-rate bounds.
    Rate(RateArgs),
    /// Eigenvalue analysis of a rooted weight matrix.
    Spectrum(SpectrumArgs),
    /// Every stage on one signal, merged into a single report.
    Full(FullArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Weight matrix file (CSV or JSON); its graph is analysed.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: GraphSource,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[command(flatten)]
    pub source: GraphSource,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub signal: PathBuf,
    /// Initial state file (CSV or JSON array); random unit vector otherwise.
    #[arg(long)]
    pub x0: Option<PathBuf>,
    /// Seed for the random initial state; defaults to --seed.
    #[arg(long)]
    pub random_seed: Option<u64>,
    /// Fixed horizon T; adaptive when omitted.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Also iterate the lifted system.
    #[arg(long)]
    pub lifted: bool,
    #[arg(long)]
    pub out_trajectory: Option<PathBuf>,
    #[arg(long)]
    pub out_report: Option<PathBuf>,
    /// Spread-vs-t CSV for plotting.
    #[arg(long)]
    pub out_spread: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub signal: PathBuf,
    /// Window length.
    #[arg(long)]
    pub p: Option<usize>,
    /// First window start.
    #[arg(long)]
    pub q: Option<usize>,
    /// Check the prediction against a simulation from a random x(1).
    #[arg(long)]
    pub simulate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RateMode {
    Balanced,
    Unbalanced,
    Period,
    Auto,
}

#[derive(Args, Debug)]
pub struct RateArgs {
    #[arg(long)]
    pub signal: PathBuf,
    #[arg(long, value_enum, default_value_t = RateMode::Auto)]
    pub mode: RateMode,
    /// Trajectory CSV to compare the bound against.
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub matrix: PathBuf,
}

#[derive(Args, Debug)]
pub struct FullArgs {
    #[arg(long)]
    pub signal: PathBuf,
    #[arg(long)]
    pub x0: Option<PathBuf>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Spread-vs-t CSV of the simulated trajectory.
    #[arg(long)]
    pub out_spread: Option<PathBuf>,
}

/// A cross-check between two independent computations disagreed.
#[derive(Debug)]
pub struct CrossCheckFailed(pub Vec<String>);

impl std::fmt::Display for CrossCheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cross-check failed: {}", self.0.join("; "))
    }
}

impl std::error::Error for CrossCheckFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<CrossCheckFailed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::UndecidableSignal(_)) => 3,
        Some(Error::InternalInconsistency(_) | Error::PropositionViolation(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
