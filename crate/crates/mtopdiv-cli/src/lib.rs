//! `mtopdiv` — cross-barcodes and the MTop-Divergence score from the
//! command line: synthetic cloud generation, barcode tables and diagrams,
//! divergence reports, experiment sweeps, and an oracle self-check.

pub mod commands;
pub mod io;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// CLI failure modes, each mapped to a stable process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or invalid argument values (exit 2).
    Usage(String),
    /// Filesystem failure (exit 3).
    Io(String),
    /// Unreadable or malformed input file (exit 3).
    Parse(String),
    /// A computation self-check or oracle comparison failed (exit 1).
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Parse(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
        }
    }
}

impl From<mtopdiv::Error> for CliError {
    fn from(e: mtopdiv::Error) -> Self {
        match e {
            mtopdiv::Error::InvalidInput(m) => CliError::Usage(m),
            mtopdiv::Error::Internal(m) => CliError::Mismatch(m),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "mtopdiv",
    version,
    about = "Cross-barcodes and MTop-Divergence for point clouds"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Generate a synthetic point cloud and write it to a file
    Synth(SynthArgs),
    /// Compute the cross-barcode of two clouds
    Barcode(BarcodeArgs),
    /// Compute the MTop-Divergence score of two clouds
    Mtopdiv(MtopdivArgs),
    /// Run a named experiment sweep and write a CSV table
    Sweep(SweepArgs),
    /// Diff the production reduction against independent oracles (≤14 points)
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthKind {
    Ring,
    Disk,
    GaussMixture,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Mtdb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    /// b_P = 1000, b_Q = 10000, 100 runs
    Full,
    /// b_P = 100, b_Q = 1000, 10 runs
    Desk,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Pq,
    Qp,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepName {
    /// Two rings at center distance d: MTop-Div and max H0 death vs d
    Rings,
    /// Two disjoint disks at center distance d: max H0 death tracks d-2
    Disks,
    /// Same-distribution disks: max H1 length decays with sample size
    Decay,
}

#[derive(Args)]
pub struct SynthArgs {
    /// Generator kind
    #[arg(long, value_enum)]
    pub kind: SynthKind,
    /// Number of points
    #[arg(long)]
    pub n: usize,
    /// Center "x,y" (ring and disk)
    #[arg(long, default_value = "0,0")]
    pub center: String,
    /// Radius (ring and disk)
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Mixture centers: inline "x,y;x,y;…" or a cloud file path
    /// (default: five centers on a circle of radius 2)
    #[arg(long)]
    pub centers: Option<String>,
    /// Mixture component standard deviation
    #[arg(long, default_value_t = 0.05)]
    pub sigma: f64,
    /// Mixture weights "w1,w2,…", must sum to 1 (default: uniform)
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; format inferred from the extension unless --format
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Args)]
pub struct BarcodeArgs {
    /// Base cloud P (the one being judged)
    pub p: PathBuf,
    /// Reference cloud Q (contracted to a single class)
    pub q: PathBuf,
    /// Maximum homology dimension
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Write the interval table here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Also render the barcode as an SVG diagram
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args)]
pub struct MtopdivArgs {
    /// Base cloud P
    pub p: PathBuf,
    /// Reference cloud Q
    pub q: PathBuf,
    /// Subsample-size profile supplying defaults for --bp/--bq/--runs
    #[arg(long, value_enum, default_value_t = Profile::Full)]
    pub profile: Profile,
    /// Points drawn from the base cloud per run (overrides the profile)
    #[arg(long)]
    pub bp: Option<usize>,
    /// Points drawn from the reference cloud per run (overrides the profile)
    #[arg(long)]
    pub bq: Option<usize>,
    /// Number of subsampling runs (overrides the profile)
    #[arg(long)]
    pub runs: Option<usize>,
    /// Homology dimension the statistic reads
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Statistic: sum | sum_sq | count | max | quantile:Q
    #[arg(long, default_value = "sum")]
    pub stat: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = DirectionArg::Pq)]
    pub direction: DirectionArg,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Which experiment to run
    #[arg(value_enum)]
    pub name: SweepName,
    /// Center distances "start:stop:step", inclusive
    /// (default: rings 0:2:0.25, disks 2.5:3.5:0.5)
    #[arg(long)]
    pub range: Option<String>,
    /// Sample sizes for the decay sweep, comma separated
    #[arg(long, default_value = "50,100,200,400")]
    pub sizes: String,
    /// Points per generated cloud (default 1000)
    #[arg(long)]
    pub n: Option<usize>,
    /// Seeds averaged per row (default: rings 3, disks 10, decay 20)
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// MTop-Div base subsample per run, rings only (default 100)
    #[arg(long)]
    pub bp: Option<usize>,
    /// MTop-Div reference subsample per run, rings only (default 1000)
    #[arg(long)]
    pub bq: Option<usize>,
    /// MTop-Div runs per seed, rings only (default 10)
    #[arg(long)]
    pub mruns: Option<usize>,
    /// Write the CSV table here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render the columns as an SVG trend plot
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Base cloud P
    pub p: PathBuf,
    /// Reference cloud Q; omit to check plain persistence of P alone
    pub q: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Applies MTOPDIV_THREADS (0 or unset = automatic) to the global pool.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("MTOPDIV_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "MTOPDIV_THREADS must be a nonnegative integer, got {raw:?}"
        ))
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool setup failed: {e}")))?;
    }
    Ok(())
}

/// Parses arguments, dispatches, and maps every outcome to an exit code:
/// 0 success, 1 computation mismatch, 2 usage error, 3 IO/parse error.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Commands::Synth(a) => commands::cmd_synth(a),
        Commands::Barcode(a) => commands::cmd_barcode(a),
        Commands::Mtopdiv(a) => commands::cmd_mtopdiv(a),
        Commands::Sweep(a) => commands::cmd_sweep(a),
        Commands::Oracle(a) => commands::cmd_oracle(a),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("mtopdiv: {e}");
            e.exit_code()
        }
    }
}
