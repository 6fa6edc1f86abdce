//! BILUO span codec and a linear-chain CRF over sparse token features.

mod biluo;
mod features;
mod lattice;
mod model;
mod train;

use thiserror::Error;

pub use biluo::{decode_biluo, decode_biluo_with_repairs, encode_biluo, Decoded, LabelScheme, Span, Tag};
pub use features::{word_shape, Featurizer, CRF_TEMPLATE_VERSION};
pub use lattice::{Inference, Potentials};
pub use model::{log_partition_and_marginals, CrfModel, CrfWeights, TaggedSentence};
pub use train::{nll_and_gradient, train_crf, EncodedSentence, TrainConfig, TrainOutcome};

#[derive(Debug, Error)]
pub enum LabelerError {
    #[error("label scheme: {0}")]
    Scheme(String),
    #[error("unknown tag `{0}`")]
    UnknownTag(String),
    #[error("span {0} outside a sentence of {1} tokens")]
    SpanOutOfRange(String, usize),
    #[error("span {0} overlaps another span")]
    Overlap(String),
    #[error("{tokens} tokens but {tags} tags")]
    Misaligned { tokens: usize, tags: usize },
    #[error("feature template `{model}` does not match featurizer `{featurizer}`")]
    TemplateMismatch { model: String, featurizer: String },
    #[error("no training data")]
    EmptyData,
    #[error("invalid training config {0}")]
    Config(String),
    #[error("training diverged to non-finite weights")]
    Diverged,
    #[error("model file: {0}")]
    ModelFile(String),
}

/// Predicted tags for a sentence under `model`.
pub fn viterbi(model: &CrfModel, tokens: &[crate::corpus::Token]) -> TaggedSentence {
    model.viterbi(tokens)
}
