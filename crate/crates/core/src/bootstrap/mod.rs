//! Seed-word bootstrapping over POS context windows, and the annotated
//! computing-resource / language-library record format.

mod context;
mod corll;
mod lexicon;

use thiserror::Error;

pub use context::{
    bootstrap_iterate, extract_context_patterns, propose_candidates, CandidateSeed, PosContextPattern, MIN_SUPPORT,
    SEED,
};
pub use corll::{
    corll_labels, emit_annotation_stubs, load_corll, load_labeled_jsonl, parse_corll, seed_sentences, serialize_corll,
    CorllData, CorllRecord,
};
pub use lexicon::{preprocess, BootstrapConfig, CorllLabel, SeedLexicon, StopList};

#[derive(Debug, Error)]
pub enum BootstrapError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("invalid record: {0}")]
    Invalid(String),
    #[error("bootstrap config: {0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}
