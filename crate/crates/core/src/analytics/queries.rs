use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use regex::Regex;

use super::matching::{corpus_keys, member_matches, paper_matches};
use super::TrendSeries;
use crate::evalkit::url_host;
use crate::extract::PaperExtraction;
use crate::Facet;

/// Hardware vendors tracked by [`manufacturer_share`].
pub const BRANDS: [&str; 3] = ["intel", "nvidia", "amd"];

fn percent(num: usize, den: usize) -> f64 {
    100.0 * num as f64 / den as f64
}

/// Per year: share (%) of papers with a source URL that have one on `host`.
/// Years without URL-bearing papers are omitted.
pub fn host_share_by_year(extractions: &[PaperExtraction], host: &str) -> TrendSeries {
    let host = url_host(host);
    let mut tally: BTreeMap<i32, (usize, usize)> = BTreeMap::new();
    for p in extractions.iter().filter(|p| !p.source_code_urls.is_empty()) {
        let t = tally.entry(p.year).or_default();
        t.1 += 1;
        if p.source_code_urls.iter().any(|(u, _)| url_host(u) == host) {
            t.0 += 1;
        }
    }
    let mut s = TrendSeries::new(host);
    s.points = tally.into_iter().map(|(y, (n, d))| (y, percent(n, d))).collect();
    s
}

/// Per category tag: share (%) of its papers with a source URL, highest
/// first, then by tag.
pub fn share_by_category(extractions: &[PaperExtraction]) -> Vec<(String, f64)> {
    let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for p in extractions {
        let tags: BTreeSet<&str> = p.category_tags.iter().map(String::as_str).collect();
        for tag in tags {
            let t = tally.entry(tag).or_default();
            t.1 += 1;
            if !p.source_code_urls.is_empty() {
                t.0 += 1;
            }
        }
    }
    let mut out: Vec<(String, f64)> = tally.into_iter().map(|(t, (n, d))| (t.to_string(), percent(n, d))).collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn rank(papers: &[&PaperExtraction], facet: Facet, keys: Vec<String>, k: usize) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = keys
        .into_iter()
        .map(|key| {
            let n = papers.iter().filter(|p| paper_matches(p, facet, &key)).count();
            (key, n)
        })
        .filter(|(_, n)| *n > 0)
        .collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out.truncate(k);
    out
}

/// The `k` corpus-wide entity keys of `facet` used by the most papers.
pub fn top_entities(extractions: &[PaperExtraction], facet: Facet, k: usize) -> Vec<(String, usize)> {
    let papers: Vec<&PaperExtraction> = extractions.iter().collect();
    rank(&papers, facet, corpus_keys(extractions.iter(), facet), k)
}

/// Among papers using `key` in `facet`, the `k` most used keys of
/// `other_facet`. The key itself is skipped when both facets agree.
pub fn co_usage(
    extractions: &[PaperExtraction],
    facet: Facet,
    key: &str,
    other_facet: Facet,
    k: usize,
) -> Vec<(String, usize)> {
    let papers: Vec<&PaperExtraction> = extractions.iter().filter(|p| paper_matches(p, facet, key)).collect();
    if papers.is_empty() {
        log::warn!("no paper uses `{key}` as {facet}");
        return Vec::new();
    }
    let keys: Vec<String> = corpus_keys(extractions.iter(), other_facet)
        .into_iter()
        .filter(|other| !(facet == other_facet && (member_matches(key, other) || member_matches(other, key))))
        .collect();
    rank(&papers, other_facet, keys, k)
}

/// Papers per year whose `facet` entities match `key`.
pub fn topic_trend(extractions: &[PaperExtraction], facet: Facet, key: &str) -> TrendSeries {
    let mut s = TrendSeries::new(key);
    for p in extractions.iter().filter(|p| paper_matches(p, facet, key)) {
        *s.points.entry(p.year).or_insert(0.0) += 1.0;
    }
    s
}

fn brand_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)\b(intel|nvidia|amd)\b").expect("valid regex"))
}

/// Per year and vendor: papers whose computing-resource members name that
/// vendor and no other. Every year with a single-vendor paper has a point
/// in each series.
pub fn manufacturer_share(extractions: &[PaperExtraction]) -> Vec<TrendSeries> {
    let mut series: Vec<TrendSeries> = BRANDS.iter().map(|b| TrendSeries::new(*b)).collect();
    for p in extractions {
        let brands: BTreeSet<String> = p
            .entities(Facet::ComputingResources)
            .iter()
            .flat_map(|c| c.members.keys())
            .flat_map(|m| brand_re().find_iter(m).map(|x| x.as_str().to_lowercase()).collect::<Vec<_>>())
            .collect();
        if brands.len() != 1 {
            continue;
        }
        for s in &mut series {
            let v = s.points.entry(p.year).or_insert(0.0);
            if brands.contains(&s.label) {
                *v += 1.0;
            }
        }
    }
    series
}

/// Papers per year matching each of two keys, zero-filled over the years
/// where either occurs.
pub fn pairwise_trend(
    extractions: &[PaperExtraction],
    facet: Facet,
    key_a: &str,
    key_b: &str,
) -> (TrendSeries, TrendSeries) {
    let mut a = topic_trend(extractions, facet, key_a);
    let mut b = topic_trend(extractions, facet, key_b);
    let years: BTreeSet<i32> = a.points.keys().chain(b.points.keys()).copied().collect();
    for y in years {
        a.points.entry(y).or_insert(0.0);
        b.points.entry(y).or_insert(0.0);
    }
    (a, b)
}
