use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "rmt", version, about = "Spectral densities, correlation kernels and Monte Carlo checks for random matrix ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// One run, as parsed from the command line. Serializes to the config
/// recorded alongside every artifact.
#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Marchenko–Pastur density of W/T.
    Density(DensityArgs),
    /// Boundary p(x) of the phase-space region where the Wigner function is nonzero.
    PhaseSpace(DensityArgs),
    /// Finite-N or limiting correlation kernel on a grid.
    Kernel(KernelArgs),
    /// Convergence of a rescaled finite kernel to its limit along an N-ladder.
    Converge(ConvergeArgs),
    /// Monte Carlo eigenvalues of Wishart or product matrices.
    Sample(SampleArgs),
    /// Run the built-in invariant suites.
    Verify(VerifyArgs),
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Density(a) | Command::PhaseSpace(a) => &a.output,
            Command::Kernel(a) => &a.output,
            Command::Converge(a) => &a.output,
            Command::Sample(a) => &a.output,
            Command::Verify(a) => &a.output,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// `lo:hi:n`, `n` equally spaced points including both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        rmt_core::harness::linspace(self.lo, self.hi, self.n)
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("expected lo:hi:n, got '{s}'"));
        };
        let lo: f64 = lo.parse().map_err(|e| format!("bad grid start '{lo}': {e}"))?;
        let hi: f64 = hi.parse().map_err(|e| format!("bad grid end '{hi}': {e}"))?;
        let n: usize = n.parse().map_err(|e| format!("bad grid size '{n}': {e}"))?;
        if !(lo.is_finite() && hi.is_finite()) || n == 0 || (n > 1 && hi <= lo) {
            return Err(format!("grid '{s}' needs finite lo < hi and n ≥ 1"));
        }
        if n > MAX_GRID {
            return Err(format!("grid size {n} exceeds {MAX_GRID}"));
        }
        Ok(Grid { lo, hi, n })
    }
}

pub const MAX_GRID: usize = 100_000;

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    /// Aspect ratio N/T, in (0, 1].
    #[arg(long)]
    pub c: f64,
    /// Number of equally spaced points on the support.
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    /// Explicit evaluation grid; overrides --points.
    #[arg(long)]
    pub grid: Option<Grid>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelKind {
    Sine,
    Airy,
    Bessel,
    MeijerHard,
    MbHard,
    Wishart,
    Product,
    Mb,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub kind: KernelKind,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta: Option<u32>,
    /// Comma-separated factor indices.
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<f64>>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<usize>,
    #[arg(long, default_value = "0:10:32")]
    pub grid: Grid,
    /// Emit only K(x, x).
    #[arg(long)]
    pub diagonal: bool,
    /// Quadrature order for integral representations.
    #[arg(long, default_value_t = rmt_core::limits::DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Wishart,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Hard,
    Bulk,
    SoftUpper,
    SoftLower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    Sine,
    Airy,
    Bessel,
    MeijerHard,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvergeArgs {
    #[arg(long, value_enum, default_value = "wishart")]
    pub ensemble: EnsembleKind,
    #[arg(long, value_enum, default_value = "hard")]
    pub regime: Regime,
    /// Limit to compare with; defaults to the limit of the regime.
    #[arg(long, value_enum)]
    pub kind: Option<TargetKind>,
    /// N/T for bulk and soft-edge ladders.
    #[arg(long)]
    pub c: Option<f64>,
    /// T - N for hard-edge Wishart ladders.
    #[arg(long)]
    pub alpha: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<u32>>,
    /// Bulk point in units of W/T; defaults to 1 + c.
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
    pub ladder: Vec<usize>,
    /// Points s whose ordered pairs form the comparison grid.
    #[arg(long)]
    pub grid: Option<Grid>,
    #[arg(long, default_value_t = rmt_core::limits::DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value = "wishart")]
    pub ensemble: EnsembleKind,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<u32>>,
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// `all` or one of special, meijer, narain, macroscopic, finite, limits, sampling, harness.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}
