//! `biface` command-line tool.
//!
//! Exit status: 0 on success, 1 when the run fails, 2 for usage errors.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::ConfigFile;

#[derive(Parser, Debug)]
#[command(name = "biface", version, about = "Node centrality for two-mode networks")]
struct Cli {
    /// Flat `key = value` file supplying defaults for any long option.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score and rank the nodes of both types.
    Rank(RankArgs),
    /// Compare rankings with SIR spreading efficiency over a beta grid.
    Evaluate(EvaluateArgs),
    /// Time each measure and report the per-node cost.
    Bench(BenchArgs),
    /// Write a Coin-Toss random bipartite graph.
    Generate(GenerateArgs),
    /// Print node, edge and density counts.
    Stats(GraphArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge list, one `type1 <sep> type2` record per line.
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Edge-list separator; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<ListFormat>,

    /// Node manifest adding isolated nodes.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    /// Measure to run; repeat or separate with commas. `all` selects every measure.
    #[arg(long, short, value_delimiter = ',')]
    measure: Vec<MeasureName>,

    /// Normaliser of the Bi-face membership term.
    #[arg(long)]
    denominator: Option<DenominatorMode>,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    measures: MeasureArgs,

    /// Directory receiving `<measure>_type1.<ext>` and `<measure>_type2.<ext>`.
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long)]
    output_format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    measures: MeasureArgs,

    #[arg(long)]
    beta_start: Option<f64>,
    #[arg(long)]
    beta_stop: Option<f64>,
    #[arg(long)]
    beta_step: Option<f64>,

    /// Simulations per node and beta.
    #[arg(long)]
    runs: Option<usize>,

    /// Steps per simulation.
    #[arg(long)]
    horizon: Option<usize>,

    /// SIR seed. Falls back to the config file, then `BIFACE_SEED`, then 0.
    #[arg(long)]
    seed: Option<u64>,

    /// Also time each measure with this many repetitions.
    #[arg(long)]
    timing_repetitions: Option<usize>,

    /// Report file; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long)]
    output_format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    measures: MeasureArgs,

    /// Timed repetitions per measure; the median is reported.
    #[arg(long)]
    repetitions: Option<usize>,

    /// Worker threads for the timed runs.
    #[arg(long)]
    threads: Option<usize>,

    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long)]
    output_format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    n2: usize,

    /// Edge probability.
    #[arg(long, short)]
    p: f64,

    /// Falls back to the config file, then `BIFACE_SEED`, then 0.
    #[arg(long)]
    seed: Option<u64>,

    /// Edge-list destination.
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long)]
    format: Option<ListFormat>,

    /// Also write a node manifest, which keeps isolated nodes.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Tsv,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DenominatorMode {
    Algorithm,
    Equation,
}

/// A measure name as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MeasureName {
    All,
    One(biface::Measure),
}

impl std::str::FromStr for MeasureName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(MeasureName::All);
        }
        s.parse().map(MeasureName::One).map_err(|e: biface::Error| e.to_string())
    }
}

macro_rules! value_enum_from_str {
    ($($t:ty),*) => {$(
        impl std::str::FromStr for $t {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                <$t as ValueEnum>::from_str(s, false)
            }
        }
    )*};
}

value_enum_from_str!(ListFormat, OutputFormat, DenominatorMode);

/// Bad arguments or configuration.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Rank(args) => commands::rank(args, &config),
        Command::Evaluate(args) => commands::evaluate(args, &config),
        Command::Bench(args) => commands::bench(args, &config),
        Command::Generate(args) => commands::generate(args, &config),
        Command::Stats(args) => commands::stats(args, &config),
    }
}
