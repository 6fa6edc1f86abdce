use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ClassifierError;
use crate::corpus::DocumentRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        })
    }
}

impl FromStr for Split {
    type Err = ClassifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "train" => Ok(Split::Train),
            "dev" => Ok(Split::Dev),
            "test" => Ok(Split::Test),
            _ => Err(ClassifierError::Invalid(format!("unknown split `{s}`"))),
        }
    }
}

/// Train/dev/test fractions and the shuffle seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
    pub rng_seed: u64,
    /// Keep each document's sentences in a single split.
    pub by_document: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec { train: 0.85, dev: 0.10, test: 0.05, rng_seed: 1, by_document: false }
    }
}

impl SplitSpec {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        let parts = [self.train, self.dev, self.test];
        if parts.iter().any(|p| !(0.0..=1.0).contains(p)) || (parts.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(ClassifierError::Invalid(format!(
                "split fractions must lie in [0,1] and sum to 1 (got {}, {}, {})",
                self.train, self.dev, self.test
            )));
        }
        Ok(())
    }

    /// Dev and test sizes rounded to nearest; train takes the remainder.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let dev = (((n as f64) * self.dev).round() as usize).min(n);
        let test = (((n as f64) * self.test).round() as usize).min(n - dev);
        (n - dev - test, dev, test)
    }
}

/// One labeled sentence with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledSentence {
    pub doc_id: String,
    pub sentence_id: String,
    pub label: bool,
    pub split: Split,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainingSet {
    pub examples: Vec<LabeledSentence>,
    pub warnings: Vec<String>,
}

impl TrainingSet {
    pub fn split(&self, split: Split) -> impl Iterator<Item = &LabeledSentence> {
        self.examples.iter().filter(move |e| e.split == split)
    }

    pub fn count(&self, split: Split) -> usize {
        self.split(split).count()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.examples {
            out.push_str(&serde_json::to_string(e).expect("example serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, ClassifierError> {
        let examples = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| ClassifierError::Invalid(format!("line {}: {e}", i + 1))))
            .collect::<Result<_, _>>()?;
        Ok(TrainingSet { examples, warnings: Vec::new() })
    }
}

/// Positives are the given `(doc_id, sentence_id)` pairs; negatives are
/// drawn uniformly without replacement from the remaining sentences,
/// `neg_ratio` per positive, capped by availability. Examples are then
/// shuffled and cut into splits.
pub fn build_training_set(
    positives: &[(String, String)],
    corpus: &[DocumentRecord],
    neg_ratio: f64,
    spec: &SplitSpec,
) -> Result<TrainingSet, ClassifierError> {
    if !(neg_ratio > 0.0) {
        return Err(ClassifierError::Invalid(format!("neg_ratio must be > 0 (got {neg_ratio})")));
    }
    spec.validate()?;
    let wanted: BTreeSet<(&str, &str)> = positives.iter().map(|(d, s)| (d.as_str(), s.as_str())).collect();
    let mut pos = Vec::new();
    let mut pool = Vec::new();
    for doc in corpus {
        for s in doc.sentences() {
            let ex = LabeledSentence {
                doc_id: doc.doc_id.clone(),
                sentence_id: s.sentence_id.clone(),
                label: wanted.contains(&(doc.doc_id.as_str(), s.sentence_id.as_str())),
                split: Split::Train,
                text: s.text.clone(),
            };
            if ex.label {
                pos.push(ex);
            } else {
                pool.push(ex);
            }
        }
    }
    if pos.is_empty() {
        return Err(ClassifierError::NoPositives);
    }
    let mut warnings = Vec::new();
    if pos.len() < wanted.len() {
        warnings.push(format!("{} positive ids not found in corpus", wanted.len() - pos.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let target = (pos.len() as f64 * neg_ratio).round() as usize;
    if target > pool.len() {
        warnings.push(format!("requested {target} negatives but only {} available", pool.len()));
    }
    let mut negs: Vec<LabeledSentence> = pool.choose_multiple(&mut rng, target.min(pool.len())).cloned().collect();
    let mut examples = pos;
    examples.append(&mut negs);
    assign_splits(&mut examples, spec, &mut rng);
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(TrainingSet { examples, warnings })
}

fn assign_splits(examples: &mut Vec<LabeledSentence>, spec: &SplitSpec, rng: &mut ChaCha8Rng) {
    let (n_train, n_dev, _) = spec.sizes(examples.len());
    if spec.by_document {
        let mut groups: BTreeMap<String, Vec<LabeledSentence>> = BTreeMap::new();
        for e in examples.drain(..) {
            groups.entry(e.doc_id.clone()).or_default().push(e);
        }
        let mut groups: Vec<Vec<LabeledSentence>> = groups.into_values().collect();
        groups.shuffle(rng);
        let mut seen = 0;
        for g in groups {
            let split = if seen < n_train {
                Split::Train
            } else if seen < n_train + n_dev {
                Split::Dev
            } else {
                Split::Test
            };
            seen += g.len();
            examples.extend(g.into_iter().map(|e| LabeledSentence { split, ..e }));
        }
    } else {
        examples.shuffle(rng);
        for (i, e) in examples.iter_mut().enumerate() {
            e.split = if i < n_train {
                Split::Train
            } else if i < n_train + n_dev {
                Split::Dev
            } else {
                Split::Test
            };
        }
    }
}
