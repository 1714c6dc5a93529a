use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Dyson Brownian motion from the Airy zeros: kernels, correlations,
/// simulation and the property suite.
#[derive(Debug, Parser)]
#[command(name = "dyson-airy", version)]
pub struct Cli {
    /// Directory for outputs and the run manifest.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, env = "DYSON_AIRY_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Airy zeros and constants.
    #[command(subcommand)]
    Airy(AiryCommand),
    /// Check a configuration against the convergence conditions.
    ConfigCheck(ConfigCheckArgs),
    /// Evaluate a space-time kernel.
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Correlation functions.
    #[command(subcommand)]
    Correlate(CorrelateCommand),
    /// Monte Carlo of the finite particle system.
    Simulate(SimulateArgs),
    /// Relaxation towards the stationary Airy process.
    #[command(subcommand)]
    Relax(RelaxCommand),
    /// Tracy–Widom distribution by both methods.
    Tw(TwArgs),
    /// Run the property suite and print a pass/fail table.
    Verify(VerifyArgs),
}

impl Command {
    /// Stem of the files written by this command.
    pub fn stem(&self) -> &'static str {
        match self {
            Command::Airy(AiryCommand::Zeros { .. }) => "airy_zeros",
            Command::Airy(AiryCommand::Constants) => "airy_constants",
            Command::ConfigCheck(_) => "config_check",
            Command::Kernel(KernelCommand::Eval(_)) => "kernel_eval",
            Command::Kernel(KernelCommand::Grid(_)) => "kernel_grid",
            Command::Correlate(CorrelateCommand::Point(_)) => "correlate_point",
            Command::Correlate(CorrelateCommand::Density(_)) => "correlate_density",
            Command::Simulate(_) => "simulate",
            Command::Relax(RelaxCommand::Residual(_)) => "relax_residual",
            Command::Relax(RelaxCommand::Recovery(_)) => "relax_recovery",
            Command::Tw(_) => "tw",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum AiryCommand {
    /// First zeros of Ai with Ai' at each zero.
    Zeros {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// d0 = log Ai(0) and d1 = Ai'(0)/Ai(0).
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorName {
    Airy,
    Integers,
    Eta,
}

/// Where the configuration comes from: a JSON file or a named generator.
#[derive(Debug, Args)]
pub struct ConfigSource {
    /// JSON file, `{"atoms":[{"x":..,"mult":..}]}` or `{"generator":"airy","n":100}`.
    #[arg(long, conflicts_with = "generator")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub generator: Option<GeneratorName>,
    /// Materialized atoms of the generator.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Exponent of the eta generator.
    #[arg(long, default_value_t = 0.5)]
    pub kappa: f64,
    /// Drop the generator and keep only the materialized atoms.
    #[arg(long)]
    pub finite: bool,
}

#[derive(Debug, Args)]
pub struct ConfigCheckArgs {
    #[command(flatten)]
    pub source: ConfigSource,
    #[arg(long, default_value_t = 1.9)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,
    /// Bound on |M_A|.
    #[arg(long)]
    pub c0: Option<f64>,
    /// Bound on the α-moment.
    #[arg(long)]
    pub c1: Option<f64>,
    /// Bound on the pairing supremum.
    #[arg(long)]
    pub c2: Option<f64>,
    /// Also report the block occupancy m(ξ, κ).
    #[arg(long)]
    pub occupancy: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindName {
    Sine,
    ExtSine,
    Airy,
    ExtAiry,
    Finite,
    Infinite,
    AiryRelaxation,
}

#[derive(Debug, Args)]
pub struct KernelChoice {
    #[arg(long, value_enum)]
    pub kind: KindName,
    #[command(flatten)]
    pub source: ConfigSource,
}

#[derive(Debug, Subcommand)]
pub enum KernelCommand {
    /// Values at listed points.
    Eval(KernelEvalArgs),
    /// Values on a product grid in x and y.
    Grid(KernelGridArgs),
}

/// Space-time point pair `s,x,t,y`.
#[derive(Debug, Clone, Copy)]
pub struct Quad(pub [f64; 4]);

impl FromStr for Quad {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = parse_floats(s)?;
        let quad: [f64; 4] = v.try_into().map_err(|_| format!("expected s,x,t,y, got {s:?}"))?;
        Ok(Quad(quad))
    }
}

#[derive(Debug, Args)]
pub struct KernelEvalArgs {
    #[command(flatten)]
    pub kernel: KernelChoice,
    /// Point as s,x,t,y; repeatable.
    #[arg(long = "at", allow_hyphen_values = true)]
    pub at: Vec<Quad>,
    /// CSV file with header s,x,t,y.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

/// Uniform grid `lo:hi:n`.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn nodes(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n).map(|k| self.lo + (self.hi - self.lo) * k as f64 / (self.n - 1) as f64).collect()
    }
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("expected lo:hi:n, got {s:?}"));
        };
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower end {lo:?}"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper end {hi:?}"))?;
        let n: usize = n.trim().parse().map_err(|_| format!("bad count {n:?}"))?;
        if n == 0 || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(format!("grid {s:?} is empty or not finite"));
        }
        Ok(Grid { lo, hi, n })
    }
}

#[derive(Debug, Args)]
pub struct KernelGridArgs {
    #[command(flatten)]
    pub kernel: KernelChoice,
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// x grid, lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Grid,
    /// y grid, lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Grid,
}

#[derive(Debug, Subcommand)]
pub enum CorrelateCommand {
    /// Multi-time correlation function at one set of points.
    Point(CorrelatePointArgs),
    /// One-point density on a grid at one time.
    Density(CorrelateDensityArgs),
}

/// One time block `t:x1,x2,...`.
#[derive(Debug, Clone)]
pub struct Block {
    pub t: f64,
    pub xs: Vec<f64>,
}

impl FromStr for Block {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (t, xs) = s.split_once(':').ok_or_else(|| format!("expected t:x1,x2,..., got {s:?}"))?;
        let t: f64 = t.trim().parse().map_err(|_| format!("bad time {t:?}"))?;
        Ok(Block { t, xs: parse_floats(xs)? })
    }
}

#[derive(Debug, Args)]
pub struct CorrelatePointArgs {
    #[command(flatten)]
    pub kernel: KernelChoice,
    /// Time block t:x1,x2,...; repeatable.
    #[arg(long = "block", required = true, allow_hyphen_values = true)]
    pub blocks: Vec<Block>,
}

#[derive(Debug, Args)]
pub struct CorrelateDensityArgs {
    #[command(flatten)]
    pub kernel: KernelChoice,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// x grid, lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    Euler,
    Matrix,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: ConfigSource,
    /// Increasing positive times, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub times: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub paths: usize,
    /// Euler step.
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long, value_enum, default_value = "matrix")]
    pub method: MethodName,
    #[arg(long)]
    pub seed: Option<u64>,
    /// csv: one row per (path, time, j); json: moments and histograms.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Histogram bins lo:hi:n for the json summary.
    #[arg(long, allow_hyphen_values = true, default_value = "-12:4:160")]
    pub bins: Grid,
}

#[derive(Debug, Subcommand)]
pub enum RelaxCommand {
    /// sup over a box of |𝕂_Ai(s+θ,·;t+θ,·) - 𝐊_Ai| for each θ.
    Residual(RelaxResidualArgs),
    /// ∫ φ ρ(t, ·) for decreasing t.
    Recovery(RelaxRecoveryArgs),
}

#[derive(Debug, Args)]
pub struct RelaxResidualArgs {
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub thetas: Vec<f64>,
    /// x range lo:hi:points.
    #[arg(long, allow_hyphen_values = true, default_value = "-3:3:13")]
    pub x: Grid,
    /// y range lo:hi:points; must use the same point count as x.
    #[arg(long, allow_hyphen_values = true, default_value = "-3:3:13")]
    pub y: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeName {
    Bump,
    Interval,
}

#[derive(Debug, Args)]
pub struct RelaxRecoveryArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.1,0.02")]
    pub ts: Vec<f64>,
    #[arg(long, value_enum, default_value = "bump")]
    pub probe: ProbeName,
    /// Bump center; defaults to the first Airy zero.
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub width: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TwArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = -8.0)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0)]
    pub to: f64,
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
    /// Gauss–Legendre nodes of the Fredholm discretization.
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    /// Scale L of the map x = s + L(1+u)/(1-u).
    #[arg(long, default_value_t = 4.0)]
    pub map_scale: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list of criterion ids.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}"))).collect()
}
