//! Evaluation against gold annotations: URL path-prefix matching, fuzzy
//! entity matching, per-facet precision/recall and macro F1.

mod score;
mod url;

use thiserror::Error;

pub use score::{
    entity_match, evaluate, macro_f1, macro_report, parse_gold, score_document, score_facet, Averaging, EvalReport,
    FacetCounts, FacetReport, GoldRecord, Predictions,
};
pub use url::{normalize_url, url_host, url_match};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no documents to score")]
    NoDocuments,
    #[error("no facet has a defined precision or recall")]
    NothingDefined,
    #[error("{0}")]
    Invalid(String),
}

#[cfg(test)]
mod tests;
