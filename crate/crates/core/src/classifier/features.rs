use std::collections::BTreeMap;

use crate::corpus::Sentence;
use crate::patterns::{PatternMatchReport, Slot};

/// Version tag of the sentence feature templates.
pub const SENT_TEMPLATE_VERSION: &str = "sent-sparse-v1";

/// Feature name to count.
pub type SentenceFeatures = BTreeMap<String, f64>;

fn length_bucket(n: usize) -> usize {
    match n {
        0 => 0,
        1..=5 => 1,
        6..=15 => 2,
        16..=30 => 3,
        _ => 4,
    }
}

/// Lowercased lemmas without punctuation, or whitespace words stripped of
/// surrounding punctuation when the sentence has no parse.
fn words(sentence: &Sentence) -> Vec<String> {
    match &sentence.tokens {
        Some(tokens) => {
            tokens
                .iter()
                .filter(|t| t.upos != "PUNCT")
                .map(|t| {
                    if t.lemma.is_empty() || t.lemma == "_" {
                        t.surface.to_lowercase()
                    } else {
                        t.lemma.to_lowercase()
                    }
                })
                .collect()
        }
        None => sentence
            .text
            .split_whitespace()
            .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase())
            .filter(|w| !w.is_empty())
            .collect(),
    }
}

/// Unigram and bigram counts, marker flags, length bucket, bias, and one
/// indicator per matched pattern slot when `report` is given.
pub fn featurize_sentence(sentence: &Sentence, report: Option<&PatternMatchReport>) -> SentenceFeatures {
    let mut f = SentenceFeatures::new();
    let mut bump = |k: String| *f.entry(k).or_insert(0.0) += 1.0;
    let w = words(sentence);
    bump("bias".into());
    bump(format!("len={}", length_bucket(w.len())));
    for u in &w {
        bump(format!("u={u}"));
    }
    for pair in w.windows(2) {
        bump(format!("b={}_{}", pair[0], pair[1]));
    }
    if !sentence.urls.is_empty() {
        bump("has_url".into());
    }
    if !sentence.footnote_marks.is_empty() {
        bump("has_footnote".into());
    }
    if !sentence.citation_marks.is_empty() {
        bump("has_citation".into());
    }
    if let Some(report) = report {
        for slot in Slot::ALL {
            if report.count(slot) > 0 {
                bump(format!("slot={}", slot.as_str()));
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::parsed;

    #[test]
    fn empty_sentence() {
        let f = featurize_sentence(&Sentence::new("s", ""), None);
        assert_eq!(f.keys().cloned().collect::<Vec<_>>(), vec!["bias".to_string(), "len=0".to_string()]);
    }

    #[test]
    fn url_flag_and_determinism() {
        let s = Sentence::new("s", "Code is at https://github.com/a/b today");
        let f = featurize_sentence(&s, None);
        assert!(f.contains_key("has_url"));
        assert_eq!(f, featurize_sentence(&s, None));
    }

    #[test]
    fn lemma_ngrams_and_slots() {
        let s = parsed("s", "We|we|PRON|2|nsubj release|release|VERB|0|root code|code|NOUN|2|obj .|.|PUNCT|2|punct");
        let mut report = PatternMatchReport::default();
        report.counts.insert(Slot::Obj, 1);
        let f = featurize_sentence(&s, Some(&report));
        assert_eq!(f["u=release"], 1.0);
        assert!(f.contains_key("b=release_code"));
        assert!(f.contains_key("slot=obj"));
        assert!(!f.contains_key("u=."));
        assert!(f.contains_key("len=1"));
    }
}
