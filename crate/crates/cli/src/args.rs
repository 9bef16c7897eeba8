use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use frackin::kinetic::Mode;

#[derive(Debug, Parser)]
#[command(
    name = "frackin",
    version,
    about = "Fractional kinetic equations with Struve-type forcing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a (generalized) Struve function at a list of arguments.
    EvalStruve(EvalStruveArgs),
    /// Evaluate the Mittag-Leffler function E_{alpha,beta} at a list of arguments.
    EvalMlf(EvalMlfArgs),
    /// Tabulate N(t) for one of the three kinetic equations.
    Solve(SolveArgs),
    /// Substitute both closed forms back into the equation and adjudicate.
    Verify(VerifyArgs),
    /// Tabulate N(t) for a numbered special case (1 to 12).
    Corollary(CorollaryArgs),
    /// Tabulate the constant-forcing solution N0 E_{v,1}(-c^v t^v).
    Haubold(HauboldArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Uniform,
    Log,
    /// t_max (i/n)^2, dense near the origin.
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StruveFunction {
    /// The four-parameter series.
    Generalized,
    /// Classical H_l.
    H,
    /// Modified L_l.
    L,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// First grid point; defaults to one spacing past the origin.
    #[arg(long)]
    pub tmin: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub tmax: f64,
    /// Number of points.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Spacing::Uniform)]
    pub spacing: Spacing,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Struve-series alpha (not the Mittag-Leffler one).
    #[arg(long = "alpha-p", default_value_t = 1.0)]
    pub alpha_p: f64,
    #[arg(long, default_value_t = 1.5)]
    pub mu: f64,
    /// Order of the Struve function.
    #[arg(long, default_value_t = 1.0)]
    pub l: f64,
    /// Offset of the second gamma factor; defaults to l + 3/2.
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    /// Fractional order.
    #[arg(long, default_value_t = 0.75)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0)]
    pub n0: f64,
    /// Relaxation rate of the distinct-rate equation (theorem 3).
    #[arg(long)]
    pub relax: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalStruveArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = StruveFunction::Generalized)]
    pub function: StruveFunction,
    /// Arguments, comma separated or repeated.
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub z: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalMlfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub z: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub theorem: u8,
    #[arg(long)]
    pub mode: Mode,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub rate: RateArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
#[command(group(ArgGroup::new("target").required(true).args(["theorem", "corollary", "haubold"])))]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub theorem: Option<u8>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
    pub corollary: Option<u8>,
    /// Constant forcing; the rate is --c, or --d when absent.
    #[arg(long)]
    pub haubold: bool,
    #[arg(long)]
    pub c: Option<f64>,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub rate: RateArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Pass threshold relative to max |N0 f|.
    #[arg(long, default_value_t = frackin::verify::TOLERANCE)]
    pub tol: f64,
    /// Exit with status 4 unless this mode passes.
    #[arg(long)]
    pub expect: Option<Mode>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CorollaryArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
    pub id: u8,
    #[arg(long)]
    pub mode: Mode,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub rate: RateArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct HauboldArgs {
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.75)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0)]
    pub n0: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
