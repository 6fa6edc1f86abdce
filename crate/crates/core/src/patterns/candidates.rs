use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matcher::token_is;
use super::{match_rules, PatternConfig, PatternMatchReport, RuleFacet, RuleSet, Slot};
use crate::corpus::{DocumentRecord, Sentence};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSentence {
    pub doc_id: String,
    pub sentence_id: String,
    pub facet: RuleFacet,
    pub report: PatternMatchReport,
    /// 0 for the trigger sentence (and always for source code), 1..=5 for
    /// lookahead hits.
    pub trigger_distance: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateRun {
    pub candidates: Vec<CandidateSentence>,
    pub skipped_unparsed: usize,
}

fn contains_excluded(sentence: &Sentence, exclusion: &[String]) -> bool {
    let Some(tokens) = &sentence.tokens else {
        return false;
    };
    tokens.iter().any(|t| {
        let surface = t.surface.to_lowercase();
        let bare = surface.trim_end_matches('.');
        exclusion.iter().any(|w| token_is(t, w) || bare == w)
    })
}

fn mentions_material(sentence: &Sentence, materials: &[String]) -> bool {
    match &sentence.tokens {
        Some(tokens) => tokens.iter().any(|t| materials.iter().any(|m| token_is(t, m))),
        None => sentence
            .text
            .split(|c: char| !c.is_alphanumeric())
            .any(|w| materials.iter().any(|m| w.eq_ignore_ascii_case(m))),
    }
}

/// Sentences that share a URL (directly or through a footnote/reference)
/// and match at least two slots with three occurrences.
pub fn source_code_candidates(doc: &DocumentRecord, rules: &RuleSet, config: &PatternConfig) -> CandidateRun {
    let mut run = CandidateRun::default();
    for sentence in doc.sentences() {
        if !sentence.is_parsed() {
            run.skipped_unparsed += 1;
            continue;
        }
        if doc.linked_urls(sentence).is_empty() || contains_excluded(sentence, &config.exclusion) {
            continue;
        }
        let report = match_rules(sentence, doc, rules).expect("parsed sentence");
        if !report.meets(config.min_distinct_slots, config.min_occurrences) {
            continue;
        }
        if config.require_adj_or_obj && report.count(Slot::AdjAdv) == 0 && report.count(Slot::Obj) == 0 {
            continue;
        }
        run.candidates.push(CandidateSentence {
            doc_id: doc.doc_id.clone(),
            sentence_id: sentence.sentence_id.clone(),
            facet: RuleFacet::SourceCode,
            report,
            trigger_distance: 0,
        });
    }
    run
}

/// Sentences mentioning a dataset-like material trigger a window over the
/// trigger and the following `config.lookahead` sentences of the same
/// section; window sentences meeting the occurrence rule qualify.
pub fn dataset_candidates(doc: &DocumentRecord, rules: &RuleSet, config: &PatternConfig) -> CandidateRun {
    let mut run = CandidateRun::default();
    for section in doc.all_sections() {
        let sentences = &section.sentences;
        // sentence index -> distance to the nearest preceding trigger
        let mut window: BTreeMap<usize, usize> = BTreeMap::new();
        for (t, sentence) in sentences.iter().enumerate() {
            if !mentions_material(sentence, &config.material_lemmas) {
                continue;
            }
            for d in 0..=config.lookahead {
                let j = t + d;
                if j >= sentences.len() {
                    break;
                }
                window.entry(j).and_modify(|cur| *cur = (*cur).min(d)).or_insert(d);
            }
        }
        for (j, distance) in window {
            let sentence = &sentences[j];
            if !sentence.is_parsed() {
                run.skipped_unparsed += 1;
                continue;
            }
            if config.exclude_in_dataset && contains_excluded(sentence, &config.exclusion) {
                continue;
            }
            let report = match_rules(sentence, doc, rules).expect("parsed sentence");
            if report.meets(config.min_distinct_slots, config.min_occurrences) {
                run.candidates.push(CandidateSentence {
                    doc_id: doc.doc_id.clone(),
                    sentence_id: sentence.sentence_id.clone(),
                    facet: RuleFacet::Dataset,
                    report,
                    trigger_distance: distance,
                });
            }
        }
    }
    run
}
