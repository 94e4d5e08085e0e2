use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "infoeval", version, about = "Information measures for classifications with a reject option")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the selected measures for every input matrix.
    Eval(EvalArgs),
    /// Rank all input matrices under each selected measure.
    Rank(RankArgs),
    /// Run the extremum detectors and the canonical cost checks.
    Theorems(TheoremArgs),
    /// Solve for the cross-over point of a large-class error and a small-class rejection.
    Omega(OmegaArgs),
    /// Tabulate the four closed-form information losses over a grid of class proportions.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    /// Round to the requested number of decimals.
    Fixed,
    /// Shortest representation that parses back to the same value.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ties {
    Dense,
    Competition,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Matrix files, `-` for stdin, or `fixture:NAME` for a bundled fixture.
    #[arg(required = true, value_name = "INPUT")]
    pub paths: Vec<String>,

    /// Input format. Defaults to the file extension (`.csv`), otherwise JSON.
    #[arg(long, value_enum)]
    pub input_format: Option<InputKind>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,

    /// Decimal places, 0 to 12. Defaults to 4 for the divergence group and 3 otherwise.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12))]
    pub round: Option<u32>,

    #[arg(long, value_enum, default_value = "fixed")]
    pub precision: Precision,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub inputs: Inputs,

    /// Comma-separated measure ids or groups (mi, divergence, cross-entropy, performance, ni, all).
    #[arg(long, alias = "measure", default_value = "ni")]
    pub measures: String,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub inputs: Inputs,

    #[arg(long, alias = "measure", default_value = "NI2")]
    pub measures: String,

    #[arg(long, value_enum, default_value = "dense")]
    pub ties: Ties,

    /// Expected order to check: `letters` uses the `intuition` field of each
    /// input record; anything else is a JSON file of `[better, worse]` pairs.
    #[arg(long, value_name = "letters|PATH")]
    pub meta_order: Option<String>,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub inputs: Inputs,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    #[arg(long, default_value_t = 100)]
    pub n: u64,

    #[arg(long, default_value_t = 1)]
    pub d: u64,

    /// Without a format only the value is printed.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12), default_value_t = 3)]
    pub round: u32,

    #[arg(long, value_enum, default_value = "fixed")]
    pub precision: Precision,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 100)]
    pub n: u64,

    #[arg(long, default_value_t = 1)]
    pub d: u64,

    /// Spacing of the class-proportion grid on (0.5, 1).
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12), default_value_t = 6)]
    pub round: u32,

    #[arg(long, value_enum, default_value = "fixed")]
    pub precision: Precision,
}

impl From<InputKind> for infoeval_core::InputFormat {
    fn from(kind: InputKind) -> Self {
        match kind {
            InputKind::Json => infoeval_core::InputFormat::Json,
            InputKind::Csv => infoeval_core::InputFormat::Csv,
        }
    }
}

pub fn meta_order_path(value: &str) -> Option<PathBuf> {
    (value != "letters").then(|| PathBuf::from(value))
}
