use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::matcher::token_is;
use super::sdp::{depth, shortest_dependency_path};
use super::{PatternConfig, PatternMatchReport, Slot};
use crate::corpus::{Sentence, Token};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredSpan {
    pub token_start: usize,
    /// Inclusive.
    pub token_end: usize,
    pub surface: String,
    pub score: f64,
}

fn in_phrase(t: &Token) -> bool {
    matches!(t.upos.as_str(), "NOUN" | "PROPN" | "NUM" | "ADJ")
}

fn can_start(t: &Token) -> bool {
    let capital = t.surface.chars().next().is_some_and(char::is_uppercase);
    capital && (t.index > 0 || t.upos == "PROPN")
}

/// Surface text of tokens `start..=end`, honoring `space_after`.
pub fn span_surface(tokens: &[Token], start: usize, end: usize) -> String {
    let mut out = String::new();
    for (k, t) in tokens[start..=end].iter().enumerate() {
        out.push_str(&t.surface);
        if k + start < end && t.space_after {
            out.push(' ');
        }
    }
    out
}

/// Splits a contiguous run into its connected pieces under the head
/// relation, returned as sorted, non-overlapping ranges.
fn connected_ranges(tokens: &[Token], start: usize, end: usize) -> Vec<(usize, usize)> {
    let n = end - start + 1;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for (i, t) in tokens.iter().enumerate().take(end + 1).skip(start) {
        if let Some(h) = t.head_index() {
            if (start..=end).contains(&h) {
                let (a, b) = (find(&mut parent, i - start), find(&mut parent, h - start));
                parent[a] = b;
            }
        }
    }
    let mut ranges: Vec<(usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if !seen.insert(root) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut parent, j) == root).collect();
        ranges.push((start + members[0], start + members[members.len() - 1]));
    }
    ranges.sort();
    // non-projective pieces can interleave; merge overlapping ranges
    let mut merged: Vec<(usize, usize)> = Vec::new();
    for (s, e) in ranges {
        match merged.last_mut() {
            Some(last) if s <= last.1 => last.1 = last.1.max(e),
            _ => merged.push((s, e)),
        }
    }
    merged
}

fn trim(tokens: &[Token], mut s: usize, mut e: usize, materials: &[String]) -> Option<(usize, usize)> {
    while s <= e && !can_start(&tokens[s]) {
        s += 1;
    }
    while e > s && (tokens[e].upos == "ADJ" || materials.iter().any(|m| token_is(&tokens[e], m))) {
        e -= 1;
    }
    (s <= e).then_some((s, e))
}

fn span_head(tokens: &[Token], s: usize, e: usize) -> usize {
    (s..=e)
        .filter(|&i| tokens[i].head_index().is_none_or(|h| h < s || h > e))
        .min_by_key(|&i| (depth(tokens, i), i))
        .unwrap_or(s)
}

/// Capitalized noun-phrase spans of a qualifying dataset sentence, scored
/// by `1 / (1 + d)` where `d` is the dependency distance from the span head
/// to the nearest matched root or object token.
pub fn dataset_entity_candidates(
    sentence: &Sentence,
    report: &PatternMatchReport,
    config: &PatternConfig,
) -> Vec<ScoredSpan> {
    let Some(tokens) = sentence.tokens.as_deref() else {
        return Vec::new();
    };
    let mut anchors: BTreeSet<usize> = report.tokens(Slot::Obj).iter().copied().collect();
    for &r in report.tokens(Slot::Root) {
        anchors.insert(r);
        // the object position of a matched root
        anchors
            .extend(tokens.iter().filter(|t| t.head_index() == Some(r) && t.deprel.contains("obj")).map(|t| t.index));
    }
    if anchors.is_empty() {
        return Vec::new();
    }

    let mut spans = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if !in_phrase(&tokens[i]) {
            i += 1;
            continue;
        }
        let run_start = i;
        while i + 1 < tokens.len() && in_phrase(&tokens[i + 1]) {
            i += 1;
        }
        let run_end = i;
        i += 1;
        for (s, e) in connected_ranges(tokens, run_start, run_end) {
            let Some((s, e)) = trim(tokens, s, e, &config.material_lemmas) else {
                continue;
            };
            let head = span_head(tokens, s, e);
            let d =
                anchors.iter().map(|&a| shortest_dependency_path(tokens, head, a)).min().expect("anchors non-empty");
            let score = 1.0 / (1.0 + d as f64);
            if score >= config.span_threshold {
                spans.push(ScoredSpan { token_start: s, token_end: e, surface: span_surface(tokens, s, e), score });
            }
        }
    }
    spans.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.token_start.cmp(&b.token_start)));
    spans
}
