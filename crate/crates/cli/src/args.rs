use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "meo", version, about = "Measured relative entropies of quantum states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Relent,
    Renyi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute D^M or D^M_alpha for a state file.
    Compute(ComputeArgs),
    /// Run seeded random instances and record iteration counts.
    Bench(BenchArgs),
    /// Check that a state file describes a valid instance.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct ComputeArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub quantity: QuantityArg,
    /// Renyi order; required for `--quantity renyi`.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    /// Per-iteration CSV trace.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    /// JSON result; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub max_iters: Option<usize>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub dim: usize,
    /// Number of seeds, run as 0..seeds.
    #[arg(long)]
    pub seeds: u64,
    /// Comma-separated mixing weights toward I/d.
    #[arg(long, value_delimiter = ',', required = true)]
    pub mixing: Vec<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, value_name = "PATH")]
    pub output: PathBuf,
    /// Record wall-clock times (rows are no longer byte-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, clap::Args)]
pub struct ValidateArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
}
