//! `pov`: split datasets, train the message-type classifier, convert
//! utterances and score hypotheses.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use pov::transform::Gender;
use pov::MessageType;

use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "pov", version, about = "Point-of-view conversion for dictated messages")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Always pick the first compatible prepend rule.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Append the fired rules to each converted line.
    #[arg(long, global = true)]
    trace: bool,
    /// Stop at the first failing line.
    #[arg(long, global = true)]
    strict: bool,
    /// Log progress and print the effective configuration.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split a dataset 70/15/15 into train, validation and test files.
    Split(SplitArgs),
    /// Train the message-type classifier.
    Train(TrainArgs),
    /// Predict message types.
    Classify(ClassifyArgs),
    /// Convert utterances into third-person messages.
    Convert(ConvertArgs),
    /// Score hypotheses against references.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Dataset TSV.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long)]
    validation: Option<PathBuf>,
    /// Where to write the model.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    max_features: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    l2_lambda: Option<f64>,
    /// Candidate initial learning rates, comma separated.
    #[arg(long, value_delimiter = ',')]
    learning_rates: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    /// File with one utterance per line (`-` for stdin).
    #[arg(long, conflicts_with = "text")]
    input: Option<PathBuf>,
    /// Utterances to classify; stdin is read when neither these nor
    /// `--input` are given.
    text: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// File with one utterance per line, optionally followed by a tab and
    /// its message type (`-` for stdin).
    #[arg(long, conflicts_with = "text")]
    input: Option<PathBuf>,
    /// Message type for every line.
    #[arg(long = "type", value_name = "TYPE")]
    message_type: Option<MessageType>,
    /// Classifier model used for lines without a type.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Sender name for the prepend phrase.
    #[arg(long)]
    scn: Option<String>,
    /// Sender gender: male, female or neutral.
    #[arg(long)]
    gender: Option<Gender>,
    #[arg(long, overrides_with = "no_greeting")]
    greeting: bool,
    #[arg(long)]
    no_greeting: bool,
    /// Utterances to convert; stdin is read when neither these nor
    /// `--input` are given.
    text: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// `hypothesis<TAB>reference` lines, or hypotheses only when
    /// `--references` is given.
    #[arg(long)]
    hypotheses: PathBuf,
    #[arg(long)]
    references: Option<PathBuf>,
    /// Language model training text (dataset TSV or plain sentences).
    #[arg(long)]
    lm_corpus: Option<PathBuf>,
    #[arg(long)]
    lm_order: Option<usize>,
    #[arg(long)]
    lm_discount: Option<f64>,
    /// Word vectors for the cosine metric.
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Also write the key=value record here.
    #[arg(long)]
    record: Option<PathBuf>,
}

fn base_config(global: &GlobalArgs) -> Result<RunConfig> {
    let mut config = match &global.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    if global.deterministic {
        config.deterministic = true;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let global = &cli.global;
    let config = base_config(global)?;
    let opts = commands::Options {
        trace: global.trace,
        strict: global.strict,
        verbose: global.verbose,
    };
    match &cli.command {
        Command::Split(args) => commands::split(config, args, opts),
        Command::Train(args) => commands::train(config, args, opts),
        Command::Classify(args) => commands::classify(config, args, opts),
        Command::Convert(args) => commands::convert(config, args, opts),
        Command::Eval(args) => commands::eval(config, args, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.global.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
