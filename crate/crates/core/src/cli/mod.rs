//! Command-line front end: `ingest`, `genlabels`, `train`, `predict`,
//! `eval` and `trends`.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 internal error.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use config::{CrfSettings, LogregSettings, RunConfig};

use crate::Facet;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "facetex", version, about = "Facet extraction from scholarly full text")]
pub struct Cli {
    /// Run configuration (JSON); flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for sampling, splitting and training.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for per-document work.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Fail on any per-file problem instead of skipping the file.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Emit diagnostics on stderr as JSON lines.
    #[arg(long, global = true)]
    pub json_errors: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate documents, attach CoNLL-U parses and write a corpus store.
    Ingest(IngestArgs),
    /// Generate weak labels for one facet.
    Genlabels(GenlabelsArgs),
    /// Train a sentence classifier or a sequence labeler.
    Train(TrainArgs),
    /// Extract facets from every document of a store.
    Predict(PredictArgs),
    /// Score predictions against gold annotations.
    Eval(EvalArgs),
    /// Run a trend query over predictions.
    Trends(TrendsArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Directory of document JSON files.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Directory of `<doc_id>.conllu` files.
    #[arg(long)]
    pub parses: Option<PathBuf>,
    /// Store directory to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenlabelsArgs {
    /// Facet to label: source_code, dataset, computing_resources or language_library.
    #[arg(long)]
    pub facet: Facet,
    /// Corpus store; defaults to `<output_dir>/store`.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Labels directory; defaults to `<output_dir>/labels`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrainKind {
    Sentence,
    Ner,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(value_enum)]
    pub kind: TrainKind,
    /// Facet the model is trained for.
    #[arg(long)]
    pub facet: Facet,
    /// Labeled sentences (sentence) or span records (ner).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Corpus store the labeled sentences refer to (sentence only).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Models directory to write into.
    #[arg(long)]
    pub models: Option<PathBuf>,
    /// Lexicon file from `genlabels` used as labeler features.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Training epochs.
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Mini-batch size.
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// Gradient step size.
    #[arg(long)]
    pub step: Option<f64>,
    /// L2 regularization strength.
    #[arg(long)]
    pub l2: Option<f64>,
    /// Decision threshold of the sentence classifier.
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Corpus store; defaults to `<output_dir>/store`.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Directory holding the trained models.
    #[arg(long)]
    pub models: Option<PathBuf>,
    /// Comma-separated facets to extract.
    #[arg(long, value_delimiter = ',', required = true)]
    pub facets: Vec<Facet>,
    /// Relation-graph JSONL file, or a directory of them.
    #[arg(long)]
    pub relgraph: Option<PathBuf>,
    /// Predictions JSONL; defaults to `<output_dir>/predictions.jsonl`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Gold annotations JSONL.
    #[arg(long)]
    pub gold: PathBuf,
    /// Predictions JSONL; defaults to `<output_dir>/predictions.jsonl`.
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    /// Directory for `report.json` and `report.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Average per document instead of pooling counts.
    #[arg(long)]
    pub per_document: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Query {
    #[value(alias = "q1")]
    HostShare,
    #[value(alias = "q2")]
    CategoryShare,
    #[value(alias = "q3")]
    TopEntities,
    CoUsage,
    #[value(alias = "q4")]
    TopicTrend,
    #[value(alias = "q5")]
    Memory,
    #[value(alias = "q6")]
    Manufacturer,
    #[value(alias = "q7", alias = "q8")]
    Pairwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TrendsArgs {
    /// Predictions JSONL; defaults to `<output_dir>/predictions.jsonl`.
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    /// Query to run.
    #[arg(long, value_enum, required_unless_present = "plot_data")]
    pub query: Option<Query>,
    /// Host for the host-share query.
    #[arg(long, default_value = "github.com")]
    pub host: String,
    /// Facet the key or ranking refers to.
    #[arg(long)]
    pub facet: Option<Facet>,
    /// Entity key (topic-trend, co-usage, pairwise).
    #[arg(long)]
    pub key: Option<String>,
    /// Second entity key (pairwise).
    #[arg(long)]
    pub key_b: Option<String>,
    /// Facet of the co-used entities (co-usage).
    #[arg(long)]
    pub other_facet: Option<Facet>,
    /// Ranking length.
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write q1.csv … q8.csv with default arguments into this directory.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

fn init_logging(json: bool) {
    let mut builder = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"));
    if json {
        builder.format(|buf, record| {
            let line = serde_json::json!({
                "level": record.level().as_str().to_lowercase(),
                "target": record.target(),
                "message": record.args().to_string(),
            });
            writeln!(buf, "{line}")
        });
    }
    let _ = builder.try_init();
}

fn report_error(err: &CliError, json: bool) {
    let mut stderr = std::io::stderr();
    if json {
        let line = serde_json::json!({"level": "error", "code": err.exit_code(), "message": err.to_string()});
        let _ = writeln!(stderr, "{line}");
    } else {
        let _ = writeln!(stderr, "error: {err}");
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json = args.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            if json {
                report_error(&CliError::Usage(e.kind().to_string() + ": " + &e.to_string()), true);
            } else {
                let _ = e.print();
            }
            return 1;
        }
    };
    init_logging(cli.json_errors);
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            report_error(&e, cli.json_errors);
            e.exit_code()
        }
    }
}

/// Runs a parsed command inside a worker pool sized by `--jobs`.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.rng_seed = seed;
    }
    if let Some(jobs) = cli.jobs {
        cfg.jobs = Some(jobs);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cfg.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Internal(e.to_string()))?;
    let ctx = commands::Context { cfg, strict: cli.strict };
    pool.install(|| match &cli.command {
        Command::Ingest(a) => commands::ingest(&ctx, a),
        Command::Genlabels(a) => commands::genlabels(&ctx, a),
        Command::Train(a) => commands::train(&ctx, a),
        Command::Predict(a) => commands::predict(&ctx, a),
        Command::Eval(a) => commands::eval(&ctx, a),
        Command::Trends(a) => commands::trends(&ctx, a),
    })
}
