use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lexicon::{norm_lemma, SeedLexicon, StopList};
use super::BootstrapError;
use crate::corpus::{DocumentRecord, Token};

/// Placeholder marking the seed position inside a POS window.
pub const SEED: &str = "SEED";

/// Minimum number of seed occurrences a POS window needs to be kept.
pub const MIN_SUPPORT: usize = 2;

const RADIUS: usize = 2;

/// A POS window (at most five tags) with one `SEED` placeholder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosContextPattern {
    pub window: Vec<String>,
    pub support: usize,
}

/// A non-seed term found in seed positions, with the share of patterns it
/// fills.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSeed {
    pub term: String,
    pub score: f64,
    /// `(doc_id, sentence_id)` pairs in corpus order.
    pub supporting_sentence_ids: Vec<(String, String)>,
}

/// Non-punctuation tokens of each parsed sentence, with ids.
fn content_sentences(doc: &DocumentRecord) -> impl Iterator<Item = (&str, Vec<&Token>)> {
    doc.sentences().filter_map(|s| {
        let toks = s.tokens.as_ref()?;
        Some((s.sentence_id.as_str(), toks.iter().filter(|t| t.upos != "PUNCT").collect()))
    })
}

/// POS window of radius 2 around `i`, truncated at sentence edges.
fn window_at(tokens: &[&Token], i: usize) -> Vec<String> {
    let lo = i.saturating_sub(RADIUS);
    let hi = (i + RADIUS).min(tokens.len() - 1);
    (lo..=hi).map(|j| if j == i { SEED.to_string() } else { tokens[j].upos.clone() }).collect()
}

fn is_seed(token: &Token, lexicon: &SeedLexicon) -> bool {
    lexicon.contains(&norm_lemma(token)) || lexicon.contains(&token.surface.to_lowercase())
}

/// Windows around every seed occurrence, kept when at least two
/// occurrences produce them. Sorted by window.
pub fn extract_context_patterns(corpus: &[DocumentRecord], lexicon: &SeedLexicon) -> Vec<PosContextPattern> {
    let per_doc: Vec<BTreeMap<Vec<String>, usize>> = corpus
        .par_iter()
        .map(|doc| {
            let mut counts = BTreeMap::new();
            for (_, toks) in content_sentences(doc) {
                for (i, t) in toks.iter().enumerate() {
                    if is_seed(t, lexicon) {
                        *counts.entry(window_at(&toks, i)).or_insert(0) += 1;
                    }
                }
            }
            counts
        })
        .collect();
    let mut merged: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    for counts in per_doc {
        for (w, c) in counts {
            *merged.entry(w).or_insert(0) += c;
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| *c >= MIN_SUPPORT)
        .map(|(window, support)| PosContextPattern { window, support })
        .collect()
}

/// Nouns and proper nouns outside the lexicon that sit in the seed slot of
/// some pattern. Sorted by descending score, then term.
pub fn propose_candidates(
    corpus: &[DocumentRecord],
    patterns: &[PosContextPattern],
    lexicon: &SeedLexicon,
    stoplist: &StopList,
) -> Vec<CandidateSeed> {
    if patterns.is_empty() {
        return Vec::new();
    }
    let index: BTreeMap<&[String], usize> =
        patterns.iter().enumerate().map(|(i, p)| (p.window.as_slice(), i)).collect();
    // term -> (patterns that extract it, (doc_id, sentence_id) sightings)
    type Fills = (BTreeSet<usize>, Vec<(String, String)>);
    let mut filled: BTreeMap<String, Fills> = BTreeMap::new();
    for doc in corpus {
        for (sid, toks) in content_sentences(doc) {
            for (i, t) in toks.iter().enumerate() {
                if !matches!(t.upos.as_str(), "NOUN" | "PROPN") {
                    continue;
                }
                let term = norm_lemma(t);
                if is_seed(t, lexicon) || stoplist.contains(&term) {
                    continue;
                }
                let Some(&p) = index.get(window_at(&toks, i).as_slice()) else {
                    continue;
                };
                let entry = filled.entry(term).or_default();
                entry.0.insert(p);
                let sref = (doc.doc_id.clone(), sid.to_string());
                if !entry.1.contains(&sref) {
                    entry.1.push(sref);
                }
            }
        }
    }
    let total = patterns.len() as f64;
    let mut out: Vec<CandidateSeed> = filled
        .into_iter()
        .map(|(term, (pats, sents))| CandidateSeed {
            term,
            score: pats.len() as f64 / total,
            supporting_sentence_ids: sents,
        })
        .collect();
    out.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.term.cmp(&b.term)));
    out
}

/// Rounds of extract and propose; candidates scoring strictly above
/// `threshold` are appended with their score. Stops when a round adds
/// nothing or after `max_iters` rounds.
pub fn bootstrap_iterate(
    corpus: &[DocumentRecord],
    seeds: SeedLexicon,
    threshold: f64,
    max_iters: usize,
    stoplist: &StopList,
) -> Result<SeedLexicon, BootstrapError> {
    if !(threshold > 0.0) || max_iters == 0 {
        return Err(BootstrapError::Config(format!(
            "threshold must be > 0 and max_iters >= 1 (got {threshold}, {max_iters})"
        )));
    }
    let mut lexicon = seeds;
    for round in 1..=max_iters {
        let patterns = extract_context_patterns(corpus, &lexicon);
        let accepted: Vec<CandidateSeed> = propose_candidates(corpus, &patterns, &lexicon, stoplist)
            .into_iter()
            .filter(|c| c.score > threshold)
            .collect();
        if accepted.is_empty() {
            break;
        }
        for c in accepted {
            log::info!("{} round {round}: accepted `{}` ({:.3})", lexicon.facet_label, c.term, c.score);
            lexicon.terms.insert(c.term, c.score);
        }
    }
    Ok(lexicon)
}
