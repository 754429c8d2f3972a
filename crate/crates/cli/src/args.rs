use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "plankforge",
    version,
    about = "Product-norm bounds, Remez estimates and plank witnesses on l_p spaces"
)]
pub struct Cli {
    /// Base seed for every randomized step.
    #[arg(long, global = true, env = "PLANKFORGE_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for multi-start searches (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the sup norm of a polynomial over the unit ball.
    Norm(NormArgs),
    /// Evaluate product-inequality constants.
    Constants(ConstantsCmd),
    /// Search for tuples with a large norm ratio (a lower bound on M_n).
    MnEstimate(MnArgs),
    /// Search for products of norm-one functionals with a small norm.
    Polarization(PolarizationArgs),
    /// Monte-Carlo sublevel-set checks.
    #[command(subcommand)]
    Remez(RemezCmd),
    /// Find a point beating every plank.
    Plank(PlankArgs),
    /// Exact sharpness examples.
    Extremal(ExtremalArgs),
    /// Check a product inequality on given polynomials.
    VerifyInequality(VerifyArgs),
}

/// Either `--space` or `--p`/`--field` with the dimension read from the
/// polynomial.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SpaceArgs {
    /// Space as `lp:p=<float|inf>,d=<int>,field=<real|complex>`.
    #[arg(long)]
    pub space: Option<String>,
    /// Exponent of the norm (`inf` allowed).
    #[arg(long, conflicts_with = "space")]
    pub p: Option<String>,
    /// Scalar field; defaults to the polynomial's own field.
    #[arg(long, conflicts_with = "space")]
    pub field: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OptimizerArgs {
    /// Number of ascent starts (default 32 d).
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormArgs {
    /// Polynomial JSON file.
    #[arg(long)]
    pub poly: PathBuf,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct ConstantsCmd {
    #[command(subcommand)]
    pub action: Option<ConstantsAction>,
    #[command(flatten)]
    pub single: ConstantsArgs,
}

#[derive(Debug, Subcommand)]
pub enum ConstantsAction {
    /// Tabulate constants over parameter ranges as CSV.
    Sweep(SweepArgs),
    /// Compare the real-Hilbert and finite-dimensional constants.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstantsArgs {
    /// One of eq2, eq3, eq4, eq5, eq6, prop12, prop12-stated.
    #[arg(long)]
    pub kind: Option<String>,
    /// Degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value = "real")]
    pub field: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    /// Kinds, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub kinds: Vec<String>,
    /// Dimensions: `a..b` (inclusive), `a,b,c` or a single value.
    #[arg(long, default_value = "1")]
    pub d: String,
    /// Number of polynomials, same syntax as `--d`.
    #[arg(long)]
    pub n: String,
    /// Common degree of every polynomial, same syntax as `--d`.
    #[arg(long)]
    pub k: String,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value = "real")]
    pub field: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "real")]
    pub field: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    /// Total number of candidate evaluations.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    /// Starts per sup-norm estimate (default 32 d).
    #[arg(long)]
    pub starts: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MnArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub degree_cap: u32,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolarizationArgs {
    #[arg(long)]
    pub space: String,
    /// Number of linear functionals.
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Subcommand)]
pub enum RemezCmd {
    /// Estimate mu(|P| <= t) and compare with 4d (t/2)^(1/k).
    Sublevel(SublevelArgs),
    /// Estimate the integral of mu(|P| <= e^-t) and compare with its bound.
    Lemma8(Lemma8Args),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MonteCarloArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Divide the polynomial by its estimated norm first.
    #[arg(long)]
    pub normalize: bool,
    /// Starts for the norm estimate.
    #[arg(long)]
    pub starts: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SublevelArgs {
    #[command(flatten)]
    pub common: MonteCarloArgs,
    /// Thresholds in (0, 1), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Lemma8Args {
    #[command(flatten)]
    pub common: MonteCarloArgs,
    /// Truncation point of the integral.
    #[arg(long, default_value_t = 40.0)]
    pub t_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeArg {
    Bst,
    Lp,
    KCustom,
    FiniteDim,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PlankArgs {
    /// Polynomial JSON files, or directories whose `*.json` files are read in
    /// name order.
    #[arg(long, num_args = 1.., required = true)]
    pub polys: Vec<PathBuf>,
    #[arg(long)]
    pub space: String,
    /// Radii, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<f64>,
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// The constant K for `k-custom`.
    #[arg(long = "K", alias = "kconst")]
    pub k_const: Option<f64>,
    /// Cap on sum k_i r_i (default 64 n prod k_i).
    #[arg(long)]
    pub r_cap: Option<u64>,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalCheck {
    /// The l_1^d family with ratio d per unit degree.
    Family,
    /// Coordinate functionals on l_1^n.
    Bst,
    /// Coordinate functionals on l_2^n.
    Hilbert,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtremalArgs {
    #[arg(long, value_enum, default_value_t = ExtremalCheck::Family)]
    pub check: ExtremalCheck,
    /// Dimension of l_1^d (family only).
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Base degree (family only).
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Also estimate the product norm numerically (family only).
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Polynomial JSON files or directories, as for `plank`.
    #[arg(long, num_args = 1.., required = true)]
    pub polys: Vec<PathBuf>,
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub kind: String,
    /// Relative slack allowed before reporting a violation.
    #[arg(long, default_value_t = 1e-6)]
    pub rtol: f64,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}
