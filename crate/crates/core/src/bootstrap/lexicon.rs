use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BootstrapError;
use crate::corpus::Sentence;

/// The five entity labels of the computing-resource and language/library
/// annotation set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CorllLabel {
    ComputePlatform,
    ComputeTime,
    HardwareResource,
    ProgrammingLanguage,
    ProgrammingLibrary,
}

impl CorllLabel {
    pub const ALL: [CorllLabel; 5] = [
        CorllLabel::ComputePlatform,
        CorllLabel::ComputeTime,
        CorllLabel::HardwareResource,
        CorllLabel::ProgrammingLanguage,
        CorllLabel::ProgrammingLibrary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CorllLabel::ComputePlatform => "ComputePlatform",
            CorllLabel::ComputeTime => "ComputeTime",
            CorllLabel::HardwareResource => "HardwareResource",
            CorllLabel::ProgrammingLanguage => "ProgrammingLanguage",
            CorllLabel::ProgrammingLibrary => "ProgrammingLibrary",
        }
    }

    /// Seed terms shipped for the label.
    pub fn default_seeds(self) -> &'static [&'static str] {
        match self {
            CorllLabel::ComputePlatform => &["nvidia", "intel", "amd", "cluster"],
            CorllLabel::ComputeTime => &["hour"],
            CorllLabel::HardwareResource => &["gpu", "cpu", "tpu", "ram", "memory", "core", "gb"],
            CorllLabel::ProgrammingLanguage => &["python", "java", "matlab", "c++"],
            CorllLabel::ProgrammingLibrary => &["pytorch", "tensorflow", "caffe", "keras", "scikit-learn", "numpy"],
        }
    }
}

impl fmt::Display for CorllLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorllLabel {
    type Err = BootstrapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CorllLabel::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| BootstrapError::UnknownLabel(s.to_string()))
    }
}

/// Scored terms for one label; initial seeds score 1.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedLexicon {
    pub facet_label: CorllLabel,
    pub terms: BTreeMap<String, f64>,
}

impl SeedLexicon {
    pub fn new<I, S>(facet_label: CorllLabel, seeds: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        SeedLexicon { facet_label, terms: seeds.into_iter().map(|s| (s.as_ref().to_lowercase(), 1.0)).collect() }
    }

    pub fn default_for(label: CorllLabel) -> Self {
        Self::new(label, label.default_seeds().iter())
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Seed lists and bootstrapping knobs, loadable from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapConfig {
    pub seeds: BTreeMap<CorllLabel, Vec<String>>,
    pub threshold: f64,
    pub max_iters: usize,
    pub stopwords: Option<Vec<String>>,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            seeds: CorllLabel::ALL
                .into_iter()
                .map(|l| (l, l.default_seeds().iter().map(|s| s.to_string()).collect()))
                .collect(),
            threshold: 0.5,
            max_iters: 3,
            stopwords: None,
        }
    }
}

impl BootstrapConfig {
    pub fn lexicons(&self) -> Vec<SeedLexicon> {
        self.seeds.iter().map(|(l, s)| SeedLexicon::new(*l, s)).collect()
    }

    pub fn stoplist(&self) -> StopList {
        match &self.stopwords {
            Some(words) => StopList::new(words),
            None => StopList::default(),
        }
    }
}

const ENGLISH_STOPWORDS: &[&str] = &[
    "i",
    "me",
    "my",
    "myself",
    "we",
    "our",
    "ours",
    "ourselves",
    "you",
    "your",
    "yours",
    "yourself",
    "yourselves",
    "he",
    "him",
    "his",
    "himself",
    "she",
    "her",
    "hers",
    "herself",
    "it",
    "its",
    "itself",
    "they",
    "them",
    "their",
    "theirs",
    "themselves",
    "what",
    "which",
    "who",
    "whom",
    "this",
    "that",
    "these",
    "those",
    "am",
    "is",
    "are",
    "was",
    "were",
    "be",
    "been",
    "being",
    "have",
    "has",
    "had",
    "having",
    "do",
    "does",
    "did",
    "doing",
    "a",
    "an",
    "the",
    "and",
    "but",
    "if",
    "or",
    "because",
    "as",
    "until",
    "while",
    "of",
    "at",
    "by",
    "for",
    "with",
    "about",
    "against",
    "between",
    "into",
    "through",
    "during",
    "before",
    "after",
    "above",
    "below",
    "to",
    "from",
    "up",
    "down",
    "in",
    "out",
    "on",
    "off",
    "over",
    "under",
    "again",
    "further",
    "then",
    "once",
    "here",
    "there",
    "when",
    "where",
    "why",
    "how",
    "all",
    "any",
    "both",
    "each",
    "few",
    "more",
    "most",
    "other",
    "some",
    "such",
    "no",
    "nor",
    "not",
    "only",
    "own",
    "same",
    "so",
    "than",
    "too",
    "very",
    "s",
    "t",
    "can",
    "will",
    "just",
    "don",
    "should",
    "now",
    "d",
    "ll",
    "m",
    "o",
    "re",
    "ve",
    "y",
];

/// Lowercased stop-word lemmas.
#[derive(Debug, Clone, PartialEq)]
pub struct StopList(BTreeSet<String>);

impl Default for StopList {
    fn default() -> Self {
        StopList::new(ENGLISH_STOPWORDS)
    }
}

impl StopList {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopList(words.into_iter().map(|w| w.as_ref().to_lowercase()).collect())
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.0.contains(lemma)
    }
}

/// Lowercased lemma of a token, falling back to the surface when the lemma
/// column is empty.
pub(crate) fn norm_lemma(token: &crate::corpus::Token) -> String {
    if token.lemma.is_empty() || token.lemma == "_" {
        token.surface.to_lowercase()
    } else {
        token.lemma.to_lowercase()
    }
}

/// Content tokens as `(lemma, upos)`: stop words and punctuation removed.
pub fn preprocess(sentence: &Sentence, stoplist: &StopList) -> Vec<(String, String)> {
    let Some(tokens) = &sentence.tokens else {
        return Vec::new();
    };
    tokens
        .iter()
        .filter(|t| t.upos != "PUNCT")
        .map(|t| (norm_lemma(t), t.upos.clone()))
        .filter(|(l, _)| !stoplist.contains(l))
        .collect()
}
