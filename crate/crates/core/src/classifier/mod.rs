//! Per-facet binary sentence classifier: sparse sentence features,
//! negative sampling with seeded splits, and L2-regularized logistic
//! regression.

mod features;
mod logreg;
mod split;

use thiserror::Error;

pub use features::{featurize_sentence, SentenceFeatures, SENT_TEMPLATE_VERSION};
pub use logreg::{
    binary_metrics, logreg_loss_and_gradient, train_logreg, BinaryMetrics, LogregConfig, LogregOutcome,
    SentClassifierModel, SparseExample,
};
pub use split::{build_training_set, LabeledSentence, Split, SplitSpec, TrainingSet};

use crate::corpus::{DocumentRecord, Sentence};
use crate::patterns::{match_rules, PatternConfig, RuleFacet, RuleSet};
use crate::Facet;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("no positive sentences")]
    NoPositives,
    #[error("training data holds a single class")]
    SingleClass,
    #[error("{0}")]
    Invalid(String),
    #[error("model file: {0}")]
    ModelFile(String),
}

/// Sentence features with pattern-slot indicators when `rules` is given and
/// the sentence is parsed.
pub fn sentence_features(doc: &DocumentRecord, sentence: &Sentence, rules: Option<&RuleSet>) -> SentenceFeatures {
    let report = rules.and_then(|r| match_rules(sentence, doc, r).ok());
    featurize_sentence(sentence, report.as_ref())
}

/// Pattern rules whose slot indicators feed the facet's sentence features.
pub fn facet_rules(facet: Facet, config: &PatternConfig) -> Option<RuleSet> {
    match facet {
        Facet::SourceCode => Some(config.rule_set(RuleFacet::SourceCode)),
        Facet::Dataset => Some(config.rule_set(RuleFacet::Dataset)),
        _ => None,
    }
}

#[cfg(test)]
mod tests;
