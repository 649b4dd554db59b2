use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "isolyap",
    version,
    about = "Lyapunov exponents and determinant moments of isotropic random matrix products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a closed form, quadrature or series.
    Exact(QueryArgs),
    /// Estimate a quantity by Monte Carlo.
    Mc(QueryArgs),
    /// Run a named check suite; exits 1 if any check fails.
    Validate(ValidateArgs),
    /// Vary one parameter over a grid and tabulate a quantity.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    DetMoment,
    LyapSum,
    Mu1,
    Spectrum,
    WishartMoment,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::DetMoment => "det-moment",
            Quantity::LyapSum => "lyap-sum",
            Quantity::Mu1 => "mu1",
            Quantity::Spectrum => "spectrum",
            Quantity::WishartMoment => "wishart-moment",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    /// Model JSON: an isotropic ensemble or a shifted Gaussian spec.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    /// Moment order.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Number of leading exponents or columns.
    #[arg(long)]
    pub k: Option<usize>,
    /// Product length per trial.
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// formula-equivalence, exact-vs-mc or mu1-crosscheck.
    #[arg(long)]
    pub suite: String,
    /// Check this model instead of the suite's built-in grid.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 20_240_501)]
    pub seed: u64,
    /// z-score limit for sampled checks.
    #[arg(long, default_value_t = 4.0)]
    pub z_limit: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Alpha,
    K,
    /// Shift of a shifted spec.
    C,
    /// `(c/sigma)^2` of a shifted spec; sets `c`.
    Lambda,
    /// Every row's sigma, or the shifted spec's sigma.
    Sigma,
    /// Every row's nu.
    Nu,
    /// Every row's omega.
    Omega,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::K => "k",
            SweepParam::C => "c",
            SweepParam::Lambda => "lambda",
            SweepParam::Sigma => "sigma",
            SweepParam::Nu => "nu",
            SweepParam::Omega => "omega",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Comma-separated grid.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub values: Vec<f64>,
    /// Estimate by Monte Carlo instead of exact evaluation.
    #[arg(long)]
    pub mc: bool,
    #[command(flatten)]
    pub params: Params,
    /// Output file; CSV unless --format json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
