use crate::extract::{cluster_entities, fold, similarity, PaperExtraction, DEFAULT_THRESHOLD};
use crate::Facet;

/// Longest key matched by whole-token equality instead of similarity.
const SHORT_KEY_LEN: usize = 2;

fn member_tokens(member: &str) -> impl Iterator<Item = String> + '_ {
    member
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !(c.is_alphanumeric() || c == '+' || c == '#')).to_lowercase())
}

/// `member` refers to `key`: similarity at the default threshold, or for
/// keys of at most two characters an exact case-insensitive token.
pub fn member_matches(key: &str, member: &str) -> bool {
    let k = fold(key);
    if k.chars().count() <= SHORT_KEY_LEN {
        return member_tokens(member).any(|t| t == k);
    }
    similarity(key, member) >= DEFAULT_THRESHOLD
}

/// Some cluster member of the paper's `facet` matches `key`.
pub fn paper_matches(paper: &PaperExtraction, facet: Facet, key: &str) -> bool {
    paper.entities(facet).iter().any(|c| c.members.keys().any(|m| member_matches(key, m)))
}

/// Corpus-wide entity keys: canonicals of the per-paper clusters,
/// clustered again across papers.
pub fn corpus_keys<'a>(papers: impl Iterator<Item = &'a PaperExtraction>, facet: Facet) -> Vec<String> {
    let canonicals: Vec<&str> = papers.flat_map(|p| p.entities(facet).iter().map(|c| c.canonical.as_str())).collect();
    let mut keys: Vec<String> =
        cluster_entities(&canonicals, DEFAULT_THRESHOLD).into_iter().map(|c| c.canonical).collect();
    keys.sort();
    keys
}
