use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use packing_forge::independence::{Algorithm, DEFAULT_NODE_LIMIT};
use packing_forge::params::DEFAULT_MAX_VERTICES;

#[derive(Debug, Parser)]
#[command(
    name = "packing-forge",
    version,
    about = "Build verified sphere packings from independent sets of lattice graphs and evaluate their density bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Omit the timestamp and wall-clock timings so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,

    /// Seed for every Monte Carlo estimate.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the lattice graph, extract an independent set and write the verified packing.
    Build(BuildArgs),
    /// Evaluate the closed-form bounds (any dimension; no construction).
    Bounds(BoundsArgs),
    /// Re-verify a packing file: checksum, separation and containment.
    Verify(VerifyArgs),
    /// Run the property grid and print one pass/fail line per property.
    Check(CheckArgs),
    /// Time graph construction and every independent-set algorithm.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    LexGreedy,
    MinDegree,
    Exact,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::LexGreedy => Algorithm::LexGreedy,
            AlgorithmArg::MinDegree => Algorithm::MinDegree,
            AlgorithmArg::Exact => Algorithm::Exact,
        }
    }
}

/// Dimension, radius and cube side, or the reference curve.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Dimension n.
    #[arg(short = 'n', long = "dim")]
    pub dim: u64,

    /// Sphere radius r.
    #[arg(long, required_unless_present = "paper_curve", conflicts_with = "paper_curve")]
    pub r: Option<u64>,

    /// Inner cube side s (even).
    #[arg(long, required_unless_present = "paper_curve", conflicts_with = "paper_curve")]
    pub s: Option<u64>,

    /// Use r = 2n^2 and s = 2n^4.
    #[arg(long)]
    pub paper_curve: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub params: ParamArgs,

    #[arg(long, value_enum, default_value_t = AlgorithmArg::LexGreedy)]
    pub algo: AlgorithmArg,

    /// Packing file to write; the bound report goes to `<out>.bounds.json`.
    #[arg(long, default_value = "packing.txt")]
    pub out: PathBuf,

    /// Refuse instances with more lattice points than this.
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub budget_vertices: u64,

    /// Branch-and-bound node limit for `--algo exact`.
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,

    /// Monte Carlo samples for an independent density estimate (n <= 4; 0 disables).
    #[arg(long, default_value_t = 0)]
    pub mc_samples: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Packing file produced by `build`.
    pub file: PathBuf,

    /// Monte Carlo samples for an independent density estimate (n <= 4; 0 disables).
    #[arg(long, default_value_t = 0)]
    pub mc_samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Small,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = Grid::Small)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub params: ParamArgs,

    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub budget_vertices: u64,

    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,

    /// Skip the exact solver.
    #[arg(long)]
    pub no_exact: bool,
}
