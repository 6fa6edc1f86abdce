#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use facetex::corpus::{attach_parse_dir, load_corpus, DocumentRecord};
use facetex::labeler::Potentials;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture_corpus() -> Vec<DocumentRecord> {
    let dir = fixtures().join("corpus");
    let docs = load_corpus(&dir.join("docs")).expect("fixture documents load");
    let (docs, _, failures) = attach_parse_dir(docs, &dir.join("parses")).expect("fixture parses attach");
    assert!(failures.is_empty(), "{failures:?}");
    docs
}

/// Every tag path of length `n` over `k` tags, in lexicographic order.
pub fn all_paths(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    out
}

/// Score of a path summed directly from the potential tables.
pub fn brute_score(p: &Potentials, path: &[usize]) -> f64 {
    let k = p.n_tags;
    let mut s = 0.0;
    for (t, &y) in path.iter().enumerate() {
        s += p.emissions[t * k + y];
        if t > 0 {
            s += p.transitions[path[t - 1] * k + y];
        }
    }
    s
}

/// Exhaustive argmax (first maximum wins) and log-sum-exp over all paths.
pub fn brute_force(p: &Potentials) -> (Vec<usize>, f64, f64) {
    let paths = all_paths(p.n, p.n_tags);
    let scores: Vec<f64> = paths.iter().map(|path| brute_score(p, path)).collect();
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    let max = scores[best];
    let log_z = max + scores.iter().map(|s| (s - max).exp()).sum::<f64>().ln();
    (paths[best].clone(), scores[best], log_z)
}

/// Plain dynamic-programming edit distance.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

/// Reference similarity: lowercase, collapse whitespace, trim edge
/// punctuation, normalized edit distance.
pub fn oracle_similarity(a: &str, b: &str) -> f64 {
    let fold = |s: &str| {
        let c = s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
        c.trim_matches(|ch: char| !ch.is_alphanumeric()).to_string()
    };
    let (a, b) = (fold(a), fold(b));
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - edit_distance(&a, &b) as f64 / longest as f64
}

/// Relative error of two vectors, `‖a − b‖ / max(‖a‖ + ‖b‖, 1e-12)`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    diff / (na + nb).max(1e-12)
}

/// All files under `dir` keyed by relative path.
pub fn read_tree(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).expect("readable dir") {
            let path = entry.expect("dir entry").path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).expect("under root").to_path_buf();
                out.insert(rel, std::fs::read(&path).expect("readable file"));
            }
        }
    }
    out
}
