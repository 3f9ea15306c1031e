//! `buffon`: command-line experiments for Buffon's triangle and needle.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime or validation failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "buffon", version, about = "Estimate pi by casting triangles (or needles) onto a grid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Triangle,
    Needle,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One run of N trials; prints crossing rates and the pi estimate.
    Estimate(EstimateArgs),
    /// R independent runs; per-run estimates, summary statistics and a histogram.
    Batch(BatchArgs),
    /// Write SVG snapshots of the first K casts.
    Render(RenderArgs),
    /// Check the expected crossings per cast against 12/pi by quadrature.
    Validate(ValidateArgs),
}

#[derive(Debug, clap::Args)]
pub struct EstimateArgs {
    #[arg(long, value_enum, default_value = "triangle")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Generated (and printed) when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Needle length over plank width, in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub ratio: f64,
    /// Write a JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct BatchArgs {
    #[arg(long, value_enum, default_value = "triangle")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1.0)]
    pub ratio: f64,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    pub bins: u64,
    /// Per-run estimates as CSV (`run,pi_estimate`).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Histogram of the per-run estimates.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Worker threads [default: available parallelism].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Debug, clap::Args)]
pub struct RenderArgs {
    #[arg(long, default_value_t = 20)]
    pub images: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct ValidateArgs {
    /// Quadrature lattice: `N`, `ROTATIONSxOFFSETS` or `ROTATIONSxOFFSETSxOFFSETS`.
    #[arg(long, default_value = "360x8000")]
    pub resolution: String,
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
    /// Also run a Monte Carlo leg with this many casts.
    #[arg(long)]
    pub mc_trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Estimate(args) => commands::estimate(&args),
        Command::Batch(args) => commands::batch(&args),
        Command::Render(args) => commands::render(&args),
        Command::Validate(args) => commands::validate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
