//! Document-level inference: sentence filtering, sequence labeling, URL
//! collection, fuzzy entity clustering, and task/method salience over
//! external relation graphs.

mod cluster;
mod pipeline;
mod salience;

use thiserror::Error;

pub use cluster::{cluster_counts, cluster_entities, fold, similarity, EntityCluster, DEFAULT_THRESHOLD};
pub use pipeline::{
    extract_source_urls, merge_document_extractions, positive_sentences, run_facet_pipeline, Extractor,
    FacetExtraction, FacetModels, PaperExtraction,
};
pub use salience::{
    parse_relation_graphs, select_task_method, Mention, MentionType, RelationGraphDoc, RelationType, SalienceResult,
};

use crate::Facet;

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("document id `{0}` does not match `{1}`")]
    DocMismatch(String, String),
    #[error("model for `{found}` used as `{expected}`")]
    FacetMismatch { expected: Facet, found: Facet },
    #[error("model: {0}")]
    Model(String),
    #[error("{0}")]
    Invalid(String),
}

/// Reads one extraction record per line.
pub fn parse_extractions(text: &str) -> Result<Vec<PaperExtraction>, ExtractError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ExtractError::Invalid(format!("extraction line {}: {e}", i + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests;
