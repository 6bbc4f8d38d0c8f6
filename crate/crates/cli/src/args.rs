use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qlearn", version, about = "Exact and PAC learning experiments, classical and quantum")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summarize a concept class: size, γ̂ with witnesses, VC dimension.
    Class(ClassArgs),
    /// Run a learner against its oracle and compare with the bounds.
    Learn(LearnArgs),
    /// Evaluate every lower and upper bound for a class.
    Bounds(BoundsArgs),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
    /// Measured complexity against bounds for every built-in class.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ClassSource {
    /// Inline class such as "parity n=3" or "points_plus_zero n=2".
    #[arg(long, conflicts_with = "class_file")]
    pub class: Option<String>,
    /// JSON class description.
    #[arg(long)]
    pub class_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    #[command(flatten)]
    pub source: ClassSource,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    ExactClassical,
    ExactQuantum,
    PacClassical,
    PacQuantum,
    Bounds,
    Verify,
}

/// Who answers membership queries in `exact-classical`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// A truthful oracle for every target in turn.
    Honest,
    /// Both adversaries, one run each.
    Adversary,
    Majority,
    Similarity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Uniform,
    /// Uniform on a largest shattered set.
    Shattered,
}

#[derive(Args, Debug, Clone)]
pub struct PacArgs {
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
}

#[derive(Args, Debug)]
pub struct LearnArgs {
    #[arg(long, value_enum)]
    pub task: Task,
    #[command(flatten)]
    pub source: ClassSource,
    #[arg(long, value_enum, default_value_t = Mode::Honest)]
    pub mode: Mode,
    #[command(flatten)]
    pub pac: PacArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = DistKind::Uniform)]
    pub distribution: DistKind,
    /// Query network for `exact-quantum`; defaults to the parity learner.
    #[arg(long)]
    pub network_file: Option<PathBuf>,
    /// Property suites for `--task verify`.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub source: ClassSource,
    #[command(flatten)]
    pub pac: PacArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these suites; repeatable.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Flip one membership-oracle answer inside the parity suite.
    #[arg(long)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub pac: PacArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}
