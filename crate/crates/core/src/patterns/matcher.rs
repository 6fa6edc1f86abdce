use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DependencyPatternRule, PatternError, RuleSet, Slot};
use crate::corpus::{DocumentRecord, Sentence, Token};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PatternMatchReport {
    pub counts: BTreeMap<Slot, usize>,
    pub matched_tokens: BTreeMap<Slot, Vec<usize>>,
    pub total_occurrences: usize,
    pub distinct_slots: usize,
}

impl PatternMatchReport {
    pub fn count(&self, slot: Slot) -> usize {
        self.counts.get(&slot).copied().unwrap_or(0)
    }

    pub fn tokens(&self, slot: Slot) -> &[usize] {
        self.matched_tokens.get(&slot).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn meets(&self, min_distinct_slots: usize, min_occurrences: usize) -> bool {
        self.distinct_slots >= min_distinct_slots && self.total_occurrences >= min_occurrences
    }

    fn record(&mut self, slot: Slot, occurrences: usize, tokens: BTreeSet<usize>) {
        self.counts.insert(slot, occurrences);
        self.matched_tokens.insert(slot, tokens.into_iter().collect());
    }

    fn finish(mut self) -> Self {
        self.total_occurrences = self.counts.values().sum();
        self.distinct_slots = self.counts.values().filter(|&&c| c > 0).count();
        self
    }
}

pub(crate) fn token_is(token: &Token, word: &str) -> bool {
    token.lemma.to_lowercase() == word || token.surface.to_lowercase() == word
}

/// Lexicon occurrences anchored at qualifying tokens. A multiword entry
/// matches when a contiguous token window containing the qualifying token
/// spells it. Each (entry, window start) pair counts once.
fn lexical_matches(
    tokens: &[Token],
    lexicon: &[String],
    qualifies: impl Fn(&Token) -> bool,
) -> (usize, BTreeSet<usize>) {
    let mut occurrences: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut matched = BTreeSet::new();
    let entries: Vec<Vec<&str>> = lexicon.iter().map(|e| e.split_whitespace().collect()).collect();
    for (i, token) in tokens.iter().enumerate() {
        if !qualifies(token) {
            continue;
        }
        for (e, words) in entries.iter().enumerate() {
            let k = words.len();
            if k == 0 {
                continue;
            }
            for offset in 0..k {
                let Some(start) = i.checked_sub(offset) else {
                    break;
                };
                if start + k > tokens.len() {
                    continue;
                }
                let window = &tokens[start..start + k];
                if window.iter().zip(words).all(|(t, w)| token_is(t, w)) && occurrences.insert((e, start)) {
                    matched.extend(start..start + k);
                }
            }
        }
    }
    (occurrences.len(), matched)
}

fn lexicon_contains(rule: &DependencyPatternRule, token: &Token) -> bool {
    rule.lexicon.iter().any(|w| token_is(token, w))
}

fn subtree_contains(tokens: &[Token], root: usize, pred: impl Fn(&Token) -> bool) -> bool {
    tokens.iter().enumerate().any(|(i, t)| {
        if !pred(t) {
            return false;
        }
        let mut cur = i;
        let mut steps = 0;
        loop {
            if cur == root {
                return true;
            }
            match tokens[cur].head_index() {
                Some(h) if steps <= tokens.len() => {
                    cur = h;
                    steps += 1;
                }
                _ => return false,
            }
        }
    })
}

/// Byte offsets of each token in the sentence text, found by scanning
/// surfaces left to right.
pub(crate) fn token_offsets(text: &str, tokens: &[Token]) -> Vec<(usize, usize)> {
    let mut cursor = 0;
    tokens
        .iter()
        .map(|t| {
            let start = text[cursor..].find(&t.surface).map(|p| p + cursor).unwrap_or(cursor);
            let end = (start + t.surface.len()).min(text.len());
            cursor = end;
            (start, end)
        })
        .collect()
}

fn is_boundary(text: &str, start: usize, end: usize) -> bool {
    let before = text[..start].chars().next_back();
    let after = text[end..].chars().next();
    !before.is_some_and(char::is_alphanumeric) && !after.is_some_and(char::is_alphanumeric)
}

/// Character spans of gazetteer names appearing at token boundaries.
pub(crate) fn gazetteer_hits(text: &str, gazetteer: &[String]) -> Vec<(usize, usize)> {
    let mut hits = Vec::new();
    for name in gazetteer.iter().filter(|n| !n.is_empty()) {
        let mut from = 0;
        while let Some(pos) = text[from..].find(name.as_str()) {
            let start = from + pos;
            let end = start + name.len();
            if is_boundary(text, start, end) {
                hits.push((start, end));
            }
            from = start + name.len().max(1);
        }
    }
    hits
}

/// Matches one facet's rules against a parsed sentence.
pub fn match_rules(
    sentence: &Sentence,
    doc: &DocumentRecord,
    rules: &RuleSet,
) -> Result<PatternMatchReport, PatternError> {
    let tokens = sentence.tokens.as_deref().ok_or_else(|| PatternError::ParseRequired(sentence.sentence_id.clone()))?;
    let mut report = PatternMatchReport::default();
    let root = tokens.iter().position(Token::is_root);

    for rule in &rules.rules {
        let (count, matched) = match rule.slot {
            Slot::Subj => lexical_matches(tokens, &rule.lexicon, |t| t.deprel.contains("subj")),
            Slot::Root => lexical_matches(tokens, &rule.lexicon, Token::is_root),
            Slot::Obj => lexical_matches(tokens, &rule.lexicon, |t| t.deprel.contains("obj")),
            Slot::AdjAdv => lexical_matches(tokens, &rule.lexicon, |t| t.upos == "ADJ" || t.upos == "ADV"),
            Slot::RelClVerb => lexical_matches(tokens, &rule.lexicon, |t| {
                t.upos == "VERB" && (t.deprel == "acl:relcl" || t.deprel == "relcl")
            }),
            Slot::RootNumber => match root {
                Some(r) if lexicon_contains(rule, &tokens[r]) => {
                    let nums: BTreeSet<usize> = tokens.iter().filter(|t| t.upos == "NUM").map(|t| t.index).collect();
                    if nums.is_empty() {
                        (0, BTreeSet::new())
                    } else {
                        let mut m = nums;
                        m.insert(r);
                        (1, m)
                    }
                }
                _ => (0, BTreeSet::new()),
            },
            Slot::AdjClNumber => {
                let heads: BTreeSet<usize> = tokens
                    .iter()
                    .enumerate()
                    .filter(|(i, t)| {
                        t.deprel == "acl"
                            && lexicon_contains(rule, t)
                            && subtree_contains(tokens, *i, |n| n.upos == "NUM")
                    })
                    .map(|(i, _)| i)
                    .collect();
                (heads.len(), heads)
            }
            Slot::HasReference => (usize::from(!sentence.citation_marks.is_empty()), BTreeSet::new()),
            Slot::HasFootnoteUrl => {
                let via_footnote =
                    sentence.footnote_marks.iter().filter_map(|id| doc.footnote(id)).any(|f| !f.urls.is_empty());
                (usize::from(via_footnote || !sentence.urls.is_empty()), BTreeSet::new())
            }
            Slot::GazetteerName => {
                let hits = gazetteer_hits(&sentence.text, &rules.gazetteer);
                let offsets = token_offsets(&sentence.text, tokens);
                let matched = offsets
                    .iter()
                    .enumerate()
                    .filter(|(_, (s, e))| hits.iter().any(|(hs, he)| s < he && hs < e))
                    .map(|(i, _)| i)
                    .collect();
                (usize::from(!hits.is_empty()), matched)
            }
        };
        report.record(rule.slot, count, matched);
    }
    Ok(report.finish())
}
