use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::lexicon::CorllLabel;
use super::BootstrapError;
use crate::corpus::{DocumentRecord, Sentence, Token};
use crate::labeler::{encode_biluo, LabelScheme, Span, TaggedSentence};

/// One annotated sentence. `lemmas` and `upos` are optional extras that
/// let a sequence labeler see the same features at training and
/// prediction time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorllRecord {
    pub text: String,
    pub tokens: Vec<String>,
    /// Inclusive `(start, end, label)` token spans.
    pub spans: Vec<(usize, usize, String)>,
    pub biluo: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upos: Option<Vec<String>>,
}

/// Validated records plus span counts per label.
#[derive(Debug, Clone, PartialEq)]
pub struct CorllData {
    pub records: Vec<CorllRecord>,
    pub histogram: BTreeMap<String, usize>,
}

impl CorllData {
    pub fn total_spans(&self) -> usize {
        self.histogram.values().sum()
    }
}

pub fn corll_labels() -> Vec<String> {
    CorllLabel::ALL.iter().map(|l| l.as_str().to_string()).collect()
}

impl CorllRecord {
    /// Builds a record from a parsed sentence and spans, deriving tags.
    pub fn from_sentence(
        sentence: &Sentence,
        spans: Vec<(usize, usize, String)>,
        labels: &[String],
    ) -> Result<Self, BootstrapError> {
        let toks = sentence.tokens.as_deref().unwrap_or_default();
        let mut rec = CorllRecord {
            text: sentence.text.clone(),
            tokens: toks.iter().map(|t| t.surface.clone()).collect(),
            spans,
            biluo: Vec::new(),
            lemmas: Some(toks.iter().map(|t| t.lemma.clone()).collect()),
            upos: Some(toks.iter().map(|t| t.upos.clone()).collect()),
        };
        let scheme = LabelScheme::new(labels.iter().cloned()).map_err(|e| BootstrapError::Config(e.to_string()))?;
        rec.biluo = rec.derive_tags(&scheme)?;
        Ok(rec)
    }

    fn label_spans(&self, scheme: &LabelScheme) -> Result<Vec<Span>, BootstrapError> {
        self.spans
            .iter()
            .map(|(s, e, l)| {
                let label = scheme.type_index(l).ok_or_else(|| BootstrapError::UnknownLabel(l.clone()))?;
                Ok(Span { start: *s, end: *e, label })
            })
            .collect()
    }

    fn derive_tags(&self, scheme: &LabelScheme) -> Result<Vec<String>, BootstrapError> {
        let spans = self.label_spans(scheme)?;
        let tags =
            encode_biluo(&spans, self.tokens.len(), scheme).map_err(|e| BootstrapError::Invalid(e.to_string()))?;
        Ok(tags.into_iter().map(|t| scheme.name(t)).collect())
    }

    /// Checks labels, span bounds and overlap, and tag consistency.
    pub fn validate(&self, scheme: &LabelScheme) -> Result<(), BootstrapError> {
        for (name, col) in [("lemmas", &self.lemmas), ("upos", &self.upos)] {
            if col.as_ref().is_some_and(|c| c.len() != self.tokens.len()) {
                return Err(BootstrapError::Invalid(format!("{name} length differs from tokens")));
            }
        }
        let expected = self.derive_tags(scheme)?;
        if expected != self.biluo {
            return Err(BootstrapError::Invalid(format!(
                "biluo tags {:?} disagree with spans (expected {:?})",
                self.biluo, expected
            )));
        }
        Ok(())
    }

    /// Tokens with lemma and POS columns where present, for the labeler.
    pub fn tokens(&self) -> Vec<Token> {
        (0..self.tokens.len())
            .map(|i| Token {
                index: i,
                surface: self.tokens[i].clone(),
                lemma: self.lemmas.as_ref().map_or_else(|| "_".to_string(), |l| l[i].clone()),
                upos: self.upos.as_ref().map_or_else(|| "_".to_string(), |u| u[i].clone()),
                head: -1,
                deprel: "_".to_string(),
                space_after: true,
            })
            .collect()
    }

    /// Gold tagged sentence under `scheme`.
    pub fn to_tagged(&self, scheme: &LabelScheme) -> Result<TaggedSentence, BootstrapError> {
        let tags = self
            .biluo
            .iter()
            .map(|t| scheme.parse(t).map_err(|e| BootstrapError::Invalid(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TaggedSentence::gold(self.tokens(), tags))
    }
}

/// Parses JSONL records restricted to `labels`. Errors name the 1-based line.
pub fn parse_corll(text: &str, labels: &[String]) -> Result<CorllData, BootstrapError> {
    let scheme = LabelScheme::new(labels.iter().cloned()).map_err(|e| BootstrapError::Config(e.to_string()))?;
    let mut histogram: BTreeMap<String, usize> = labels.iter().map(|l| (l.clone(), 0)).collect();
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record_err = |message: String| BootstrapError::Record { line: i + 1, message };
        let rec: CorllRecord = serde_json::from_str(line).map_err(|e| record_err(e.to_string()))?;
        rec.validate(&scheme).map_err(|e| match e {
            BootstrapError::UnknownLabel(_) => e,
            other => record_err(other.to_string()),
        })?;
        for (_, _, l) in &rec.spans {
            *histogram.get_mut(l).expect("validated label") += 1;
        }
        records.push(rec);
    }
    Ok(CorllData { records, histogram })
}

/// Reads a file of records over the five computing-resource and
/// language/library labels.
pub fn load_corll(path: &Path) -> Result<CorllData, BootstrapError> {
    load_labeled_jsonl(path, &corll_labels())
}

/// Reads a file of records in the same layout over any label set.
pub fn load_labeled_jsonl(path: &Path, labels: &[String]) -> Result<CorllData, BootstrapError> {
    let text = std::fs::read_to_string(path).map_err(|e| BootstrapError::Io(format!("{}: {e}", path.display())))?;
    parse_corll(&text, labels)
}

/// One JSON object per line.
pub fn serialize_corll(records: &[CorllRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Unannotated records (no spans, all `O`) for manual labeling.
pub fn emit_annotation_stubs(sentences: &[&Sentence]) -> Vec<CorllRecord> {
    sentences
        .iter()
        .map(|s| CorllRecord::from_sentence(s, Vec::new(), &[]).expect("empty spans always encode"))
        .collect()
}

/// Parsed sentences containing a term of any lexicon, in corpus order.
pub fn seed_sentences<'a>(corpus: &'a [DocumentRecord], lexicons: &[super::SeedLexicon]) -> Vec<&'a Sentence> {
    corpus
        .iter()
        .flat_map(|d| d.sentences())
        .filter(|s| {
            s.tokens.as_ref().is_some_and(|toks| {
                toks.iter().any(|t| {
                    let lemma = super::lexicon::norm_lemma(t);
                    let surface = t.surface.to_lowercase();
                    lexicons.iter().any(|l| l.contains(&lemma) || l.contains(&surface))
                })
            })
        })
        .collect()
}
