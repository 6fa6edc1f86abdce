use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CrfModel, CrfWeights, Featurizer, LabelScheme, LabelerError, TaggedSentence};

/// A training sentence as active feature ids per position plus gold tag
/// indices.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedSentence {
    pub features: Vec<Vec<usize>>,
    pub gold: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub step_size: f64,
    pub l2_lambda: f64,
    pub rng_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { epochs: 10, batch_size: 32, step_size: 0.1, l2_lambda: 1e-4, rng_seed: 1 }
    }
}

/// Trained model plus the full-data objective (mean NLL + L2 term);
/// `trace[0]` is at initialization and `trace[e]` after epoch `e`.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: CrfModel,
    pub trace: Vec<f64>,
}

impl CrfWeights {
    /// Summed NLL over `batch` plus `λ/2·‖w‖²`, and its gradient.
    pub fn nll_and_gradient(&self, l2_lambda: f64, batch: &[EncodedSentence]) -> (f64, CrfWeights) {
        let (data_nll, mut grad) = self.data_nll_and_gradient(batch);
        for (g, w) in grad.emission.iter_mut().zip(&self.emission) {
            *g += l2_lambda * w;
        }
        for (g, w) in grad.transitions.iter_mut().zip(&self.transitions) {
            *g += l2_lambda * w;
        }
        (data_nll + 0.5 * l2_lambda * self.squared_norm(), grad)
    }

    /// Summed NLL without regularization and its gradient (expected minus
    /// empirical counts). Inference runs in parallel; accumulation follows
    /// batch order.
    pub fn data_nll_and_gradient(&self, batch: &[EncodedSentence]) -> (f64, CrfWeights) {
        let k = self.n_tags;
        let results: Vec<_> = batch
            .par_iter()
            .map(|s| {
                let pot = self.potentials(&s.features);
                let inf = pot.infer();
                (inf.log_z - pot.path_score(&s.gold), inf)
            })
            .collect();
        let mut grad = CrfWeights::zeros(self.n_features, k);
        let mut nll = 0.0;
        for (s, (loss, inf)) in batch.iter().zip(results) {
            nll += loss;
            for (t, fs) in s.features.iter().enumerate() {
                let marg = &inf.node_marginals[t * k..(t + 1) * k];
                for &f in fs {
                    let row = &mut grad.emission[f * k..(f + 1) * k];
                    for y in 0..k {
                        row[y] += marg[y];
                    }
                    row[s.gold[t]] -= 1.0;
                }
            }
            for t in 0..s.gold.len().saturating_sub(1) {
                let edge = &inf.edge_marginals[t * k * k..(t + 1) * k * k];
                for (g, e) in grad.transitions.iter_mut().zip(edge) {
                    *g += e;
                }
                grad.transitions[s.gold[t] * k + s.gold[t + 1]] -= 1.0;
            }
        }
        (nll, grad)
    }
}

fn check_tags(scheme: &LabelScheme, s: &TaggedSentence) -> Result<(), LabelerError> {
    if s.tags.len() != s.tokens.len() {
        return Err(LabelerError::Misaligned { tokens: s.tokens.len(), tags: s.tags.len() });
    }
    let n_types = scheme.entity_types().len();
    if let Some(bad) = s.tags.iter().find(|t| t.entity_type().is_some_and(|ty| ty >= n_types)) {
        return Err(LabelerError::UnknownTag(format!("{bad:?}")));
    }
    Ok(())
}

impl CrfModel {
    pub fn encode_gold(&self, s: &TaggedSentence) -> EncodedSentence {
        EncodedSentence {
            features: self.encode(&s.tokens),
            gold: s.tags.iter().map(|&t| self.scheme.index(t)).collect(),
        }
    }
}

/// NLL + L2 term of the model on gold sentences, and its gradient.
pub fn nll_and_gradient(model: &CrfModel, batch: &[TaggedSentence]) -> Result<(f64, CrfWeights), LabelerError> {
    for s in batch {
        check_tags(&model.scheme, s)?;
    }
    let encoded: Vec<EncodedSentence> = batch.iter().map(|s| model.encode_gold(s)).collect();
    Ok(model.weights.nll_and_gradient(model.l2_lambda, &encoded))
}

fn objective(weights: &CrfWeights, l2_lambda: f64, data: &[EncodedSentence]) -> f64 {
    let (nll, _) = weights.data_nll_and_gradient(data);
    nll / data.len() as f64 + 0.5 * l2_lambda * weights.squared_norm()
}

/// Mini-batch gradient descent from all-zero weights over the features seen
/// in `data`.
pub fn train_crf(
    data: &[TaggedSentence],
    scheme: LabelScheme,
    featurizer: Featurizer,
    config: &TrainConfig,
) -> Result<TrainOutcome, LabelerError> {
    if data.is_empty() {
        return Err(LabelerError::EmptyData);
    }
    if config.batch_size == 0 || !(config.step_size > 0.0) || !(config.l2_lambda >= 0.0) {
        return Err(LabelerError::Config(format!("{config:?}")));
    }
    for s in data {
        check_tags(&scheme, s)?;
    }
    let names: BTreeSet<String> = data
        .par_iter()
        .map(|s| (0..s.tokens.len()).flat_map(|i| featurizer.features(&s.tokens, i)).collect::<BTreeSet<String>>())
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut model = CrfModel::new(scheme, featurizer, names.into_iter().collect(), config.l2_lambda);
    let encoded: Vec<EncodedSentence> = data.iter().map(|s| model.encode_gold(s)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut order: Vec<usize> = (0..encoded.len()).collect();
    let mut trace = vec![objective(&model.weights, config.l2_lambda, &encoded)];
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(config.batch_size) {
            let batch: Vec<EncodedSentence> = chunk.iter().map(|&i| encoded[i].clone()).collect();
            let (_, grad) = model.weights.data_nll_and_gradient(&batch);
            let scale = 1.0 / batch.len() as f64;
            let w = &mut model.weights;
            for (wi, gi) in w.emission.iter_mut().zip(&grad.emission) {
                *wi -= config.step_size * (gi * scale + config.l2_lambda * *wi);
            }
            for (wi, gi) in w.transitions.iter_mut().zip(&grad.transitions) {
                *wi -= config.step_size * (gi * scale + config.l2_lambda * *wi);
            }
        }
        let obj = objective(&model.weights, config.l2_lambda, &encoded);
        log::debug!("crf epoch {} objective {obj:.6}", epoch + 1);
        trace.push(obj);
    }
    if !model.weights.is_finite() {
        return Err(LabelerError::Diverged);
    }
    Ok(TrainOutcome { model, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeler::Tag;
    use crate::testutil::tokens;
    use rand::Rng;

    fn toy(rng: &mut ChaCha8Rng) -> (CrfWeights, Vec<EncodedSentence>) {
        let (f, k) = (10, 3);
        let mut w = CrfWeights::zeros(f, k);
        w.emission.iter_mut().chain(w.transitions.iter_mut()).for_each(|x| *x = rng.gen_range(-1.0..1.0));
        let data = (0..3)
            .map(|_| {
                let n = rng.gen_range(1..5);
                EncodedSentence {
                    features: (0..n).map(|_| (0..3).map(|_| rng.gen_range(0..f)).collect()).collect(),
                    gold: (0..n).map(|_| rng.gen_range(0..k)).collect(),
                }
            })
            .collect();
        (w, data)
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (w, data) = toy(&mut rng);
        let lambda = 0.1;
        let (_, grad) = w.nll_and_gradient(lambda, &data);
        let h = 1e-5;
        let n_em = w.emission.len();
        for i in 0..n_em + w.transitions.len() {
            let bump = |d: f64| {
                let mut v = w.clone();
                if i < n_em {
                    v.emission[i] += d;
                } else {
                    v.transitions[i - n_em] += d;
                }
                v.nll_and_gradient(lambda, &data).0
            };
            let fd = (bump(h) - bump(-h)) / (2.0 * h);
            let an = if i < n_em { grad.emission[i] } else { grad.transitions[i - n_em] };
            assert!((fd - an).abs() <= 1e-4 * fd.abs().max(an.abs()).max(1e-3), "{i}: {fd} vs {an}");
        }
    }

    #[test]
    fn separable_direction_lowers_nll() {
        let data = vec![EncodedSentence { features: vec![vec![0], vec![1]], gold: vec![1, 0] }];
        let mut dir = CrfWeights::zeros(2, 2);
        dir.emission[1] = 1.0;
        dir.emission[2] = 1.0;
        let mut last = f64::INFINITY;
        for s in [0.0, 1.0, 2.0, 4.0, 8.0] {
            let mut w = CrfWeights::zeros(2, 2);
            w.emission.iter_mut().zip(&dir.emission).for_each(|(a, b)| *a = s * b);
            let (nll, _) = w.nll_and_gradient(0.0, &data);
            assert!(nll < last);
            last = nll;
        }
    }

    fn synthetic() -> Vec<TaggedSentence> {
        let spec = "We|we|PRON|2|nsubj used|use|VERB|0|root a|a|DET|4|det GPU|gpu|NOUN|2|obj";
        vec![TaggedSentence::gold(tokens(spec), vec![Tag::Outside, Tag::Outside, Tag::Outside, Tag::Unit(0)])]
    }

    #[test]
    fn zero_epochs_is_initialization() {
        let cfg = TrainConfig { epochs: 0, ..TrainConfig::default() };
        let scheme = LabelScheme::new(["HW"]).unwrap();
        let out = train_crf(&synthetic(), scheme, Featurizer::default(), &cfg).unwrap();
        assert!(out.model.weights.emission.iter().chain(&out.model.weights.transitions).all(|&w| w == 0.0));
        assert_eq!(out.trace.len(), 1);
    }

    #[test]
    fn same_seed_same_weights() {
        let scheme = LabelScheme::new(["HW"]).unwrap();
        let cfg = TrainConfig { epochs: 5, batch_size: 1, ..TrainConfig::default() };
        let a = train_crf(&synthetic(), scheme.clone(), Featurizer::default(), &cfg).unwrap();
        let b = train_crf(&synthetic(), scheme, Featurizer::default(), &cfg).unwrap();
        assert_eq!(a.model.weights, b.model.weights);
        assert!(a.trace.last().unwrap() < &a.trace[0]);
    }

    #[test]
    fn tag_outside_scheme_rejected() {
        let scheme = LabelScheme::new(["HW"]).unwrap();
        let mut data = synthetic();
        data[0].tags[3] = Tag::Unit(1);
        let err = train_crf(&data, scheme, Featurizer::default(), &TrainConfig::default()).unwrap_err();
        assert!(matches!(err, LabelerError::UnknownTag(_)));
        assert!(matches!(
            train_crf(&[], LabelScheme::new(["HW"]).unwrap(), Featurizer::default(), &TrainConfig::default()),
            Err(LabelerError::EmptyData)
        ));
    }

    #[test]
    fn model_json_round_trip_and_prediction() {
        let scheme = LabelScheme::new(["HW"]).unwrap();
        let cfg = TrainConfig { epochs: 30, batch_size: 1, step_size: 0.5, ..TrainConfig::default() };
        let fz = Featurizer::default().with_lexicon("HW", ["gpu"]);
        let model = train_crf(&synthetic(), scheme, fz, &cfg).unwrap().model;
        let back = CrfModel::from_json(&model.to_json()).unwrap();
        let toks = &synthetic()[0].tokens;
        assert_eq!(back.viterbi(toks).tags, model.viterbi(toks).tags);
        assert_eq!(model.predict_spans(toks), vec![crate::labeler::Span { start: 3, end: 3, label: 0 }]);
        back.check_template().unwrap();
    }
}
