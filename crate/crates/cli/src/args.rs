//! Command-line surface. Every flag has a config-file counterpart; flags win
//! over the file, the file wins over defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "avckit",
    version,
    about = "Corruption oracles, adversarial risk, and capacity checks for halfspaces and sign networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Corrupted predictions of one hypothesis on a point file
    Corrupt(CorruptArgs),
    /// Adversarial and classic risk of one hypothesis on a sample
    Risk(RiskArgs),
    /// Adversarial empirical risk minimization over a finite family
    Aerm(AermArgs),
    /// Grid-restricted adversarial-VC search with witness emission
    Avc(AvcArgs),
    /// Shattering coefficient and shattering check for a point tuple
    Shatter(ShatterArgs),
    /// Bound tables: growth-rate crossovers and network growth bounds
    Bounds(BoundsArgs),
    /// Randomized growth-bound verification suites
    VerifyLemmas(VerifyLemmasArgs),
    /// Re-check a shattering witness document
    VerifyWitness(VerifyWitnessArgs),
    /// Synthetic labeled-sample generation
    Gen(GenArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Corrupt(_) => "corrupt",
            Command::Risk(_) => "risk",
            Command::Aerm(_) => "aerm",
            Command::Avc(_) => "avc",
            Command::Shatter(_) => "shatter",
            Command::Bounds(_) => "bounds",
            Command::VerifyLemmas(_) => "verify-lemmas",
            Command::VerifyWitness(_) => "verify-witness",
            Command::Gen(_) => "gen",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Interval,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Interval => "interval",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// Exact per-point-set candidate halfspaces
    Candidates,
    /// Explicit weight/bias parameter grid
    Grid,
}

/// Neighborhood flags shared by every corruption-facing command.
#[derive(Args)]
pub struct BallArgs {
    /// Ball exponent: 1, 2, or inf
    #[arg(long)]
    pub p: Option<String>,
    /// Ball radius
    #[arg(long)]
    pub epsilon: Option<f64>,
}

/// Family flags shared by aerm, avc, and shatter.
#[derive(Args)]
pub struct FamilyArgs {
    /// Hypothesis family to search
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Comma-separated weight values for the grid family
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Comma-separated bias values for the grid family
    #[arg(long, allow_hyphen_values = true)]
    pub biases: Option<String>,
}

#[derive(Args)]
pub struct CorruptArgs {
    /// TOML config file with the same keys as the flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Hypothesis document (halfspace or network)
    #[arg(long)]
    pub hypothesis: Option<PathBuf>,
    /// CSV of points (bare or labeled; labels are ignored)
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[command(flatten)]
    pub ball: BallArgs,
    /// Corruption oracle: exact, or sound interval propagation (networks)
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RiskArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub hypothesis: Option<PathBuf>,
    /// Labeled sample CSV
    #[arg(long)]
    pub sample: Option<PathBuf>,
    #[command(flatten)]
    pub ball: BallArgs,
    /// Finite distribution TOML for true-risk computation
    #[arg(long)]
    pub dist: Option<PathBuf>,
    /// Monte-Carlo trial count for the true-risk estimate
    #[arg(long)]
    pub mc_trials: Option<usize>,
    /// Seed for the Monte-Carlo estimate
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AermArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub sample: Option<PathBuf>,
    #[command(flatten)]
    pub ball: BallArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Comma-separated epsilon sweep; emits a CSV table instead of a report
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AvcArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV of search-grid points (bare or labeled)
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Axis-grid dimension (alternative to --points)
    #[arg(long)]
    pub dim: Option<usize>,
    /// Axis-grid lower corner coordinate
    #[arg(long, allow_negative_numbers = true)]
    pub grid_lo: Option<f64>,
    /// Axis-grid upper corner coordinate
    #[arg(long, allow_negative_numbers = true)]
    pub grid_hi: Option<f64>,
    /// Axis-grid step
    #[arg(long)]
    pub grid_step: Option<f64>,
    #[command(flatten)]
    pub ball: BallArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Largest subset size to try
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Summary TOML path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Witness document path (skipped when omitted)
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ShatterArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV of tuple points (bare or labeled; labels feed the loss vectors)
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Comma-separated reference labels (+1/-1); defaults to the CSV labels
    /// or all +1
    #[arg(long, allow_hyphen_values = true)]
    pub labels: Option<String>,
    #[command(flatten)]
    pub ball: BallArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Edge counts for crossover rows: "1-16" or "1,4,9"
    #[arg(long)]
    pub edges: Option<String>,
    /// Layer-size architectures, semicolon-separated: "2,2,1;3,4,1"
    #[arg(long)]
    pub layers: Option<String>,
    /// Sample sizes for architecture rows: "1-6" or "2,4,8"
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyLemmasArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Randomized trials per suite
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyWitnessArgs {
    /// Witness document to re-check
    #[arg(long)]
    pub witness: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Two isotropic Gaussian components with opposite labels
    #[value(name = "gaussian-mixture-2class")]
    GaussianMixture2class,
    /// Uniform box points with a planted margin-separated halfspace
    MarginSeparatedHalfspace,
    /// Axis-aligned grid labeled by a planted halfspace
    GridUniform,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<GenKind>,
    /// Sample size (random kinds)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Component-center separation (gaussian mixture)
    #[arg(long)]
    pub sep: Option<f64>,
    /// Component standard deviation (gaussian mixture)
    #[arg(long)]
    pub noise: Option<f64>,
    /// Planted weight vector, comma-separated
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Planted bias
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Required margin |w.x + b| for every point
    #[arg(long)]
    pub margin: Option<f64>,
    /// Grid lower corner coordinate (grid-uniform)
    #[arg(long, allow_negative_numbers = true)]
    pub grid_lo: Option<f64>,
    /// Grid upper corner coordinate (grid-uniform)
    #[arg(long, allow_negative_numbers = true)]
    pub grid_hi: Option<f64>,
    /// Grid step (grid-uniform)
    #[arg(long)]
    pub grid_step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
