use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    decode_biluo, Featurizer, Inference, LabelScheme, LabelerError, Potentials, Span, Tag, CRF_TEMPLATE_VERSION,
};
use crate::corpus::Token;

/// Raw CRF parameters: dense `F × T` emission weights and `T × T`
/// transition weights.
#[derive(Debug, Clone, PartialEq)]
pub struct CrfWeights {
    pub n_features: usize,
    pub n_tags: usize,
    pub emission: Vec<f64>,
    pub transitions: Vec<f64>,
}

impl CrfWeights {
    pub fn zeros(n_features: usize, n_tags: usize) -> Self {
        CrfWeights {
            n_features,
            n_tags,
            emission: vec![0.0; n_features * n_tags],
            transitions: vec![0.0; n_tags * n_tags],
        }
    }

    /// Potentials for a sentence given its active feature ids per position.
    pub fn potentials(&self, features: &[Vec<usize>]) -> Potentials {
        let k = self.n_tags;
        let mut emissions = vec![0.0; features.len() * k];
        for (t, fs) in features.iter().enumerate() {
            for &f in fs {
                let row = &self.emission[f * k..(f + 1) * k];
                for y in 0..k {
                    emissions[t * k + y] += row[y];
                }
            }
        }
        Potentials { n: features.len(), n_tags: k, emissions, transitions: self.transitions.clone() }
    }

    pub fn squared_norm(&self) -> f64 {
        self.emission.iter().chain(&self.transitions).map(|w| w * w).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.emission.iter().chain(&self.transitions).all(|w| w.is_finite())
    }
}

/// Tokens with aligned tags; `score` is the Viterbi log-score for
/// predictions and `None` for gold data.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedSentence {
    pub tokens: Vec<Token>,
    pub tags: Vec<Tag>,
    pub score: Option<f64>,
}

impl TaggedSentence {
    pub fn gold(tokens: Vec<Token>, tags: Vec<Tag>) -> Self {
        TaggedSentence { tokens, tags, score: None }
    }
}

/// A trained linear-chain CRF with its feature dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct CrfModel {
    pub scheme: LabelScheme,
    pub featurizer: Featurizer,
    pub feature_template_version: String,
    pub l2_lambda: f64,
    pub(crate) feature_names: Vec<String>,
    pub(crate) feature_ids: HashMap<String, usize>,
    pub weights: CrfWeights,
}

impl CrfModel {
    /// An all-zero model over the given feature dictionary.
    pub fn new(scheme: LabelScheme, featurizer: Featurizer, feature_names: Vec<String>, l2_lambda: f64) -> Self {
        let feature_ids = feature_names.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let weights = CrfWeights::zeros(feature_names.len(), scheme.n_tags());
        CrfModel {
            scheme,
            featurizer,
            feature_template_version: CRF_TEMPLATE_VERSION.to_string(),
            l2_lambda,
            feature_names,
            feature_ids,
            weights,
        }
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn feature_id(&self, name: &str) -> Option<usize> {
        self.feature_ids.get(name).copied()
    }

    /// Sets one emission weight, adding the feature to the dictionary if
    /// needed. Mostly useful for hand-built models.
    pub fn set_emission(&mut self, feature: &str, tag: Tag, weight: f64) {
        let k = self.scheme.n_tags();
        let id = match self.feature_id(feature) {
            Some(id) => id,
            None => {
                let id = self.feature_names.len();
                self.feature_names.push(feature.to_string());
                self.feature_ids.insert(feature.to_string(), id);
                self.weights.emission.extend(std::iter::repeat_n(0.0, k));
                self.weights.n_features += 1;
                id
            }
        };
        let y = self.scheme.index(tag);
        self.weights.emission[id * k + y] = weight;
    }

    pub fn set_transition(&mut self, prev: Tag, next: Tag, weight: f64) {
        let k = self.scheme.n_tags();
        let (a, b) = (self.scheme.index(prev), self.scheme.index(next));
        self.weights.transitions[a * k + b] = weight;
    }

    /// Active known feature ids at each position; unseen features are dropped.
    pub fn encode(&self, tokens: &[Token]) -> Vec<Vec<usize>> {
        (0..tokens.len())
            .map(|i| self.featurizer.features(tokens, i).iter().filter_map(|f| self.feature_id(f)).collect())
            .collect()
    }

    pub fn potentials(&self, tokens: &[Token]) -> Potentials {
        self.weights.potentials(&self.encode(tokens))
    }

    pub fn check_template(&self) -> Result<(), LabelerError> {
        if self.feature_template_version != self.featurizer.version() {
            return Err(LabelerError::TemplateMismatch {
                model: self.feature_template_version.clone(),
                featurizer: self.featurizer.version().to_string(),
            });
        }
        Ok(())
    }

    pub fn viterbi(&self, tokens: &[Token]) -> TaggedSentence {
        let (path, score) = self.potentials(tokens).viterbi();
        TaggedSentence {
            tokens: tokens.to_vec(),
            tags: path.into_iter().map(|y| self.scheme.tag(y)).collect(),
            score: Some(score),
        }
    }

    /// Decoded entity spans of the Viterbi labeling.
    pub fn predict_spans(&self, tokens: &[Token]) -> Vec<Span> {
        decode_biluo(&self.viterbi(tokens).tags)
    }

    pub fn to_json(&self) -> String {
        let k = self.scheme.n_tags();
        let tags: Vec<String> = self.scheme.tags().into_iter().map(|t| self.scheme.name(t)).collect();
        let mut emissions = Vec::new();
        let mut order: Vec<usize> = (0..self.feature_names.len()).collect();
        order.sort_by(|&a, &b| self.feature_names[a].cmp(&self.feature_names[b]));
        for f in order {
            for (y, tag) in tags.iter().enumerate() {
                let w = self.weights.emission[f * k + y];
                if w != 0.0 {
                    emissions.push((self.feature_names[f].clone(), tag.clone(), w));
                }
            }
        }
        let file = CrfModelFile {
            format: MODEL_FORMAT.to_string(),
            entity_types: self.scheme.entity_types().to_vec(),
            feature_template_version: self.feature_template_version.clone(),
            lexicons: self.featurizer.lexicons.clone(),
            l2_lambda: self.l2_lambda,
            tags: tags.clone(),
            transitions: (0..k).map(|a| self.weights.transitions[a * k..(a + 1) * k].to_vec()).collect(),
            emissions,
        };
        serde_json::to_string_pretty(&file).expect("model serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, LabelerError> {
        let file: CrfModelFile = serde_json::from_str(json).map_err(|e| LabelerError::ModelFile(e.to_string()))?;
        if file.format != MODEL_FORMAT {
            return Err(LabelerError::ModelFile(format!("unexpected format `{}`", file.format)));
        }
        let scheme = LabelScheme::new(file.entity_types)?;
        let k = scheme.n_tags();
        if file.transitions.len() != k || file.transitions.iter().any(|r| r.len() != k) {
            return Err(LabelerError::ModelFile(format!("transition matrix must be {k}x{k}")));
        }
        let mut names: Vec<String> = file.emissions.iter().map(|(f, _, _)| f.clone()).collect();
        names.dedup();
        let featurizer = Featurizer { lexicons: file.lexicons };
        let mut model = CrfModel::new(scheme, featurizer, names, file.l2_lambda);
        model.feature_template_version = file.feature_template_version;
        for (f, tag, w) in &file.emissions {
            let tag = model.scheme.parse(tag)?;
            model.set_emission(f, tag, *w);
        }
        model.weights.transitions = file.transitions.into_iter().flatten().collect();
        if !model.weights.is_finite() {
            return Err(LabelerError::ModelFile("non-finite weight".into()));
        }
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<(), LabelerError> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| LabelerError::ModelFile(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, LabelerError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| LabelerError::ModelFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

const MODEL_FORMAT: &str = "facetex-crf/1";

#[derive(Serialize, Deserialize)]
struct CrfModelFile {
    format: String,
    entity_types: Vec<String>,
    feature_template_version: String,
    lexicons: BTreeMap<String, std::collections::BTreeSet<String>>,
    l2_lambda: f64,
    tags: Vec<String>,
    transitions: Vec<Vec<f64>>,
    emissions: Vec<(String, String, f64)>,
}

/// Forward-backward for a sentence under a model.
pub fn log_partition_and_marginals(model: &CrfModel, tokens: &[Token]) -> Inference {
    model.potentials(tokens).infer()
}
