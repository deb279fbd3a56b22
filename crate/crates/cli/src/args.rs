use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "singint",
    version,
    about = "Verify the truncated-cosine singular integral identity and compute alpha-distance covariance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the radial quadrature with C(d,alpha)|x|^alpha at one point.
    Verify(VerifyArgs),
    /// Verify a grid of (d, m, alpha) and write a CSV report.
    Sweep(SweepArgs),
    /// Evaluate the ball/exterior decomposition T1 + T2 + T3.
    Decompose(DecomposeArgs),
    /// Approach the pole at alpha = 2m from inside the strip.
    PoleProbe(PoleProbeArgs),
    /// Distance covariance/correlation of two CSV samples.
    Dcov(DcovArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub u_switch: Option<f64>,
    #[arg(long)]
    pub tail_start_zeros: Option<usize>,
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha_im: f64,
    /// Evaluation point, comma separated (default e1).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub tol: Tolerances,
    /// Largest relative error still counted as a success.
    #[arg(long, default_value_t = 1e-6)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub d_list: String,
    #[arg(long)]
    pub m_list: String,
    /// Real parts as start:stop:step (inclusive); empty for no points.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_grid: String,
    /// Imaginary parts, comma separated (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_im: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[command(flatten)]
    pub tol: Tolerances,
    #[arg(long, default_value_t = 1e-6)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct PoleProbeArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value = "0.2,0.1,0.05")]
    pub epsilons: String,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CenteringArg {
    Double,
    Unbiased,
}

#[derive(Debug, Args)]
pub struct DcovArgs {
    #[arg(long)]
    pub x_file: PathBuf,
    #[arg(long)]
    pub y_file: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = CenteringArg::Double)]
    pub centering: CenteringArg,
    #[arg(long, default_value_t = 0)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
