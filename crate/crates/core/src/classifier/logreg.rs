use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ClassifierError, SentenceFeatures, SENT_TEMPLATE_VERSION};
use crate::Facet;

/// Sparse `(feature id, value)` pairs with a binary label.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseExample {
    pub features: Vec<(usize, f64)>,
    pub label: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogregConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub step_size: f64,
    pub l2_lambda: f64,
    pub rng_seed: u64,
    pub decision_threshold: f64,
}

impl Default for LogregConfig {
    fn default() -> Self {
        LogregConfig {
            epochs: 20,
            batch_size: 16,
            step_size: 0.5,
            l2_lambda: 1e-4,
            rng_seed: 1,
            decision_threshold: 0.5,
        }
    }
}

/// Binary sentence classifier for one facet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SentClassifierModel {
    pub format: String,
    pub facet: Facet,
    pub template_version: String,
    pub weights: BTreeMap<String, f64>,
    pub bias: f64,
    pub decision_threshold: f64,
}

const MODEL_FORMAT: &str = "facetex-sentclf/1";

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Sigmoid kept strictly inside (0, 1).
fn probability(z: f64) -> f64 {
    sigmoid(z).clamp(f64::EPSILON, 1.0 - f64::EPSILON)
}

impl SentClassifierModel {
    pub fn zero(facet: Facet) -> Self {
        SentClassifierModel {
            format: MODEL_FORMAT.into(),
            facet,
            template_version: SENT_TEMPLATE_VERSION.into(),
            weights: BTreeMap::new(),
            bias: 0.0,
            decision_threshold: 0.5,
        }
    }

    pub fn score(&self, features: &SentenceFeatures) -> f64 {
        self.bias + features.iter().map(|(k, v)| self.weights.get(k).map_or(0.0, |w| w * v)).sum::<f64>()
    }

    pub fn predict_prob(&self, features: &SentenceFeatures) -> f64 {
        probability(self.score(features))
    }

    pub fn classify(&self, features: &SentenceFeatures) -> bool {
        self.predict_prob(features) >= self.decision_threshold
    }

    pub fn validate(&self) -> Result<(), ClassifierError> {
        if self.format != MODEL_FORMAT {
            return Err(ClassifierError::ModelFile(format!("unexpected format `{}`", self.format)));
        }
        if self.template_version != SENT_TEMPLATE_VERSION {
            return Err(ClassifierError::ModelFile(format!(
                "template `{}` does not match featurizer `{SENT_TEMPLATE_VERSION}`",
                self.template_version
            )));
        }
        if !(self.decision_threshold > 0.0 && self.decision_threshold <= 1.0) {
            return Err(ClassifierError::ModelFile(format!("threshold {} outside (0,1]", self.decision_threshold)));
        }
        if !self.bias.is_finite() || self.weights.values().any(|w| !w.is_finite()) {
            return Err(ClassifierError::ModelFile("non-finite weight".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, ClassifierError> {
        let m: Self = serde_json::from_str(json).map_err(|e| ClassifierError::ModelFile(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<(), ClassifierError> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| ClassifierError::ModelFile(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, ClassifierError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ClassifierError::ModelFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Mean logistic loss plus `λ/2·‖w‖²` (bias unregularized), with gradients
/// for the weights and the bias.
pub fn logreg_loss_and_gradient(
    weights: &[f64],
    bias: f64,
    data: &[SparseExample],
    l2_lambda: f64,
) -> (f64, Vec<f64>, f64) {
    let mut grad = vec![0.0; weights.len()];
    let mut grad_b = 0.0;
    let mut loss = 0.0;
    let n = data.len().max(1) as f64;
    for ex in data {
        let z = bias + ex.features.iter().map(|&(f, v)| weights[f] * v).sum::<f64>();
        let y = if ex.label { 1.0 } else { 0.0 };
        // log(1 + e^z) - y z, computed stably
        loss += z.max(0.0) + (-z.abs()).exp().ln_1p() - y * z;
        let r = sigmoid(z) - y;
        for &(f, v) in &ex.features {
            grad[f] += r * v / n;
        }
        grad_b += r / n;
    }
    let reg: f64 = weights.iter().map(|w| w * w).sum::<f64>();
    for (g, w) in grad.iter_mut().zip(weights) {
        *g += l2_lambda * w;
    }
    (loss / n + 0.5 * l2_lambda * reg, grad, grad_b)
}

/// Precision/recall/F1 on a labeled set; `None` where undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryMetrics {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    pub accuracy: f64,
}

pub fn binary_metrics(predicted: &[bool], gold: &[bool]) -> BinaryMetrics {
    let tp = predicted.iter().zip(gold).filter(|(p, g)| **p && **g).count() as f64;
    let n_pred = predicted.iter().filter(|p| **p).count() as f64;
    let n_gold = gold.iter().filter(|g| **g).count() as f64;
    let correct = predicted.iter().zip(gold).filter(|(p, g)| p == g).count() as f64;
    let precision = (n_pred > 0.0).then(|| tp / n_pred);
    let recall = (n_gold > 0.0).then(|| tp / n_gold);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        (Some(_), Some(_)) => Some(0.0),
        _ => None,
    };
    BinaryMetrics { precision, recall, f1, accuracy: if gold.is_empty() { 0.0 } else { correct / gold.len() as f64 } }
}

#[derive(Debug, Clone)]
pub struct LogregOutcome {
    pub model: SentClassifierModel,
    /// Training objective at initialization and after each epoch.
    pub trace: Vec<f64>,
    pub dev: Option<BinaryMetrics>,
}

/// Mini-batch gradient steps on the logistic loss with a proximal L2
/// shrink `w ← w / (1 + step·λ)` after each step; the bias is not shrunk.
pub fn train_logreg(
    facet: Facet,
    train: &[(SentenceFeatures, bool)],
    dev: &[(SentenceFeatures, bool)],
    config: &LogregConfig,
) -> Result<LogregOutcome, ClassifierError> {
    if !train.iter().any(|(_, y)| *y) || !train.iter().any(|(_, y)| !*y) {
        return Err(ClassifierError::SingleClass);
    }
    if config.batch_size == 0 || !(config.step_size > 0.0) || !(config.l2_lambda >= 0.0) {
        return Err(ClassifierError::Invalid(format!("bad training config {config:?}")));
    }
    if !(config.decision_threshold > 0.0 && config.decision_threshold <= 1.0) {
        return Err(ClassifierError::Invalid(format!("threshold {} outside (0,1]", config.decision_threshold)));
    }
    let names: Vec<String> =
        train.iter().flat_map(|(f, _)| f.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let ids: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let data: Vec<SparseExample> = train
        .iter()
        .map(|(f, y)| SparseExample { features: f.iter().map(|(k, v)| (ids[k.as_str()], *v)).collect(), label: *y })
        .collect();
    let mut w = vec![0.0; names.len()];
    let mut b = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut trace = vec![logreg_loss_and_gradient(&w, b, &data, config.l2_lambda).0];
    let shrink = 1.0 / (1.0 + config.step_size * config.l2_lambda);
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(config.batch_size) {
            let batch: Vec<SparseExample> = chunk.iter().map(|&i| data[i].clone()).collect();
            let (_, g, gb) = logreg_loss_and_gradient(&w, b, &batch, 0.0);
            for (wi, gi) in w.iter_mut().zip(&g) {
                *wi = (*wi - config.step_size * gi) * shrink;
            }
            b -= config.step_size * gb;
        }
        trace.push(logreg_loss_and_gradient(&w, b, &data, config.l2_lambda).0);
    }
    let mut model = SentClassifierModel::zero(facet);
    model.weights = names.into_iter().zip(w).filter(|(_, w)| *w != 0.0).collect();
    model.bias = b;
    model.decision_threshold = config.decision_threshold;
    model.validate()?;
    let dev_metrics = (!dev.is_empty()).then(|| {
        let pred: Vec<bool> = dev.iter().map(|(f, _)| model.classify(f)).collect();
        let gold: Vec<bool> = dev.iter().map(|(_, y)| *y).collect();
        binary_metrics(&pred, &gold)
    });
    Ok(LogregOutcome { model, trace, dev: dev_metrics })
}
