use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cpt-kit", version, about = "PT-symmetry analysis, C-operator synthesis and Hermitization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check PT-frame (and CPT-frame) axioms.
    Validate(ProblemArgs),
    /// PT-symmetry verdict, spectrum and broken/unbroken classification.
    Analyze(ProblemArgs),
    /// Synthesize C for an unbroken Hamiltonian.
    BuildC(BuildArgs),
    /// Map H to the Hermitian h = (PC)^{1/2} H (PC)^{-1/2}.
    Hermitize(BuildArgs),
    /// Sweep one model parameter and tabulate the spectrum as CSV.
    Scan(ScanArgs),
    /// Tensor product, direct sum or doubling of Hamiltonians.
    Compose(ComposeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    #[value(name = "2x2")]
    TwoByTwo,
    #[value(name = "3x3")]
    ThreeByThree,
    #[value(name = "4x4")]
    FourByFour,
    Chain,
    Tensor,
}

/// Built-in model parameters. Blocks take one `--r/--s/--theta` each, in
/// order; angles are radians.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[arg(long = "r", allow_negative_numbers = true)]
    pub r: Vec<f64>,
    #[arg(long = "s", allow_negative_numbers = true)]
    pub s: Vec<f64>,
    #[arg(long = "theta", allow_negative_numbers = true)]
    pub theta: Vec<f64>,
    /// Isolated level of the 3x3 model.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FrameArgs {
    /// Hamiltonian matrix document.
    #[arg(long, conflicts_with = "model")]
    pub hamiltonian: Option<PathBuf>,
    /// Frame document with `p`, `t` and optional `c`.
    #[arg(long, conflicts_with_all = ["p", "t"])]
    pub frame: Option<PathBuf>,
    #[arg(long, requires = "t")]
    pub p: Option<PathBuf>,
    #[arg(long, requires = "p")]
    pub t: Option<PathBuf>,
    #[arg(long)]
    pub c: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub frame: FrameArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    C,
    Pc,
    /// Both (PC)^{1/2} and (PC)^{-1/2}.
    Sqrt,
    H,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Documents to write; repeatable or comma separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub emit: Vec<Emit>,
    /// Directory for the emitted documents; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// `name=lo:hi:n`, where name is r, s, theta or a, optionally followed
    /// by a 1-based block index (theta2). Unindexed names set every block.
    #[arg(long)]
    pub sweep: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComposeOp {
    Tensor,
    Sum,
    Double,
}

#[derive(Debug, Clone, Args)]
pub struct ComposeArgs {
    #[arg(long, value_enum)]
    pub op: ComposeOp,
    /// Component Hamiltonians, in order.
    #[arg(long = "hamiltonian", required = true)]
    pub hamiltonians: Vec<PathBuf>,
    /// Component frames, one per Hamiltonian; pair-swap frames when absent.
    #[arg(long = "frame")]
    pub frames: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}
