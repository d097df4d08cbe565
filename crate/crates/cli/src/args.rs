use std::path::PathBuf;

use blotto::{UpdateRule, WarmStart, WinningRule};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blotto", version, about = "Sampled MWU solver for electoral Colonel Blotto games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Self-play: both players learn.
    Solve(SolveArgs),
    /// One player plays a fixed allocation, the other learns.
    VsFixed(VsFixedArgs),
    /// Compare the sampler against explicit enumeration on a small game.
    OracleCheck(OracleArgs),
    /// Time-to-regret over a grid of battle counts and capacities.
    TimingSweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Battle values, `battle,value[,advantage]`.
    #[arg(long, group = "source")]
    pub battles: Option<PathBuf>,
    /// Election dataset, `state,electoral_votes,visits_p1,visits_p2[,advantage]`.
    #[arg(long, group = "source")]
    pub election: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    #[arg(long, default_value = "zero-one")]
    pub rule: WinningRule,
    /// Ignored with `--election`.
    #[arg(long, default_value_t = 20)]
    pub n1: u32,
    #[arg(long, default_value_t = 20)]
    pub n2: u32,
    #[arg(long, default_value_t = blotto::game::DEFAULT_VOTER_SCALE)]
    pub voter_scale: u32,
    #[arg(long, default_value_t = 0.995)]
    pub beta: f64,
    #[arg(long, default_value_t = 100_000)]
    pub rounds: u64,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100)]
    pub checkpoint: u64,
    #[arg(long, default_value = "none")]
    pub warm: WarmStart,
    #[arg(long, default_value_t = 0)]
    pub warm_rounds: u64,
    #[arg(long, default_value = "standard")]
    pub update: UpdateRule,
    /// Exact equilibrium distance at every checkpoint.
    #[arg(long)]
    pub eq_distance: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Exit 2 unless the regret target was reached.
    #[arg(long)]
    pub strict: bool,
    /// Skip the SVG figures.
    #[arg(long)]
    pub no_figures: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixedFrom {
    Data,
    Proportional,
    ThreeHalves,
    Uniform,
    File,
}

#[derive(Debug, Clone, Args)]
pub struct VsFixedArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub fixed_player: u8,
    /// Defaults to `data` with `--election`, otherwise `three-halves`.
    #[arg(long, value_enum)]
    pub fixed_from: Option<FixedFrom>,
    /// Allocation file, `battle,amount`, for `--fixed-from file`.
    #[arg(long)]
    pub fixed_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub n: u32,
    #[arg(long, default_value_t = 0.9)]
    pub beta: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random opponent rounds folded into the loss matrix.
    #[arg(long, default_value_t = 50)]
    pub history: u64,
    #[arg(long, default_value_t = 0.02)]
    pub tv_tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "zero-one")]
    pub rule: WinningRule,
    #[arg(long, default_value_t = 0.95)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100_000)]
    pub rounds: u64,
    #[arg(long, default_value_t = 100)]
    pub checkpoint: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [10, 15, 20])]
    pub ks: Vec<usize>,
    /// Capacity pairs as `n1:n2`.
    #[arg(long, value_delimiter = ',', default_values = ["20:20", "20:25", "20:30", "25:25", "25:30", "30:30"])]
    pub pairs: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}
