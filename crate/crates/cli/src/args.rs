use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Adjoints of linear fractional composition operators: weights, matrices,
/// kernels and verification reports.
#[derive(Debug, Parser)]
#[command(name = "lfadjoint", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight sequence β(0..=M) as CSV.
    Weights(WeightsArgs),
    /// Operator matrix (or its singular values) as CSV.
    Matrix(MatrixArgs),
    /// Kernel residual report for A²_α.
    Kernel(KernelArgs),
    /// Run one verification.
    #[command(subcommand)]
    Verify(Verify),
    /// Run the full battery in parallel.
    Suite(OutputArgs),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// C_φ* = M_g C_σ M_h*: exact identity when α+2 > 0, finite rank otherwise;
    /// compactness with --t.
    Cowen(CowenArgs),
    /// Compactness decay on power-law weights.
    Compact(CompactArgs),
    /// Perturbation bridge between A²_α (α = −2t−1) and power-law weights.
    Perturbation(PerturbationArgs),
    /// Heller's theorem A (φ(0) = 0).
    HellerA(HellerAArgs),
    /// Heller's theorem B (automorphisms).
    HellerB(HellerBArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Composition,
    Multiplication,
    CowenDifference,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; relative paths resolve against $LFADJOINT_OUT_DIR when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Exactly one of `--alpha` or `--t`.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Space {
    /// A²_α weights.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Power-law weights β(n) = ℓ n^t.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    #[arg(long)]
    pub trunc: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub kind: MatrixKind,
    /// Map coefficients a,b,c,d (composition, cowen-difference).
    #[arg(long, allow_hyphen_values = true)]
    pub map: Option<String>,
    /// Multiplier coefficients u_0,u_1,… (multiplication).
    #[arg(long, allow_hyphen_values = true)]
    pub symbol: Option<String>,
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    #[arg(long)]
    pub trunc: usize,
    /// Emit singular values instead of entries.
    #[arg(long)]
    pub singular_values: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 128)]
    pub trunc: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Truncation {
    /// Truncation order M (power of two, 32..=1024); checks also run at 2M.
    #[arg(long, default_value_t = 128)]
    pub trunc: usize,
}

#[derive(Debug, Args)]
pub struct CowenArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    #[command(flatten)]
    pub trunc: Truncation,
    /// Leading block for the exact identity (default M/8).
    #[arg(long)]
    pub block: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompactArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    #[command(flatten)]
    pub trunc: Truncation,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PerturbationArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    #[command(flatten)]
    pub trunc: Truncation,
    #[arg(long)]
    pub block: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HellerAArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[command(flatten)]
    pub trunc: Truncation,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HellerBArgs {
    /// Unimodular rotation λ.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub lambda: String,
    /// Point u with |u| < 1.
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[command(flatten)]
    pub trunc: Truncation,
    #[command(flatten)]
    pub output: OutputArgs,
}
