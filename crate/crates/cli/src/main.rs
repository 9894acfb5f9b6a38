use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgeo::catalog::Family;
use qgeo::Measure;

mod commands;
mod format;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "qgeo",
    version,
    about = "Riemannian entanglement measures for multi-qubit pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print measure values for one state as a JSON object.
    Measure(MeasureArgs),
    /// Evaluate measures over a uniform theta grid and write CSV.
    Sweep(SweepArgs),
    /// Write the CSV datasets behind the reference plots.
    Figure(FigureArgs),
    /// List the canonical bipartitions of n qubits.
    Bipartitions {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=6))]
        n: u8,
    },
}

#[derive(Args, Debug, Clone)]
struct MetricArgs {
    /// Smallest boundary offset in the r -> 1 limit.
    #[arg(long, env = "QGEO_EPS", default_value_t = 1e-9)]
    eps: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, env = "QGEO_TOL", default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    /// JSON state file: {"n": 2, "amplitudes": [[re, im], ...]}.
    #[arg(long, conflicts_with_all = ["family", "theta", "n", "gsd"], required_unless_present = "family")]
    state: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    /// Family parameter in radians.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Qubit count for ghz and w.
    #[arg(long)]
    n: Option<usize>,
    /// Generalized Schmidt coefficients l0,l1,l2,l3,l4 for the gsd family.
    #[arg(long, value_delimiter = ',')]
    gsd: Option<Vec<f64>>,
    /// Comma-separated measures (default: all that apply).
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<Measure>>,
    /// Cross-check against the brute-force oracles; report on stderr.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    metric: MetricArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, allow_negative_numbers = true)]
    theta_from: f64,
    #[arg(long, allow_negative_numbers = true)]
    theta_to: f64,
    /// Grid points, end points included.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    steps: u64,
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<Measure>>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    metric: MetricArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FigureName {
    Fig1,
    Psi1,
    Psi2,
    ChiCompare,
    Chi3Smooth,
}

#[derive(Args, Debug)]
struct FigureArgs {
    name: FigureName,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(2..))]
    points: u64,
    /// Include the overall 1/4 in the metric (halves fig1 lengths).
    #[arg(long)]
    quarter_prefactor: bool,
    #[command(flatten)]
    metric: MetricArgs,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure(a) => commands::measure(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Figure(a) => commands::figure(a),
        Command::Bipartitions { n } => commands::bipartitions(n as usize),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
