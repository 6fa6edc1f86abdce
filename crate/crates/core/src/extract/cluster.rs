use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Default clustering and matching threshold.
pub const DEFAULT_THRESHOLD: f64 = 0.85;

/// Surface variants of one entity with their mention counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityCluster {
    pub canonical: String,
    pub members: BTreeMap<String, usize>,
}

impl EntityCluster {
    pub fn total(&self) -> usize {
        self.members.values().sum()
    }
}

/// Lowercase, collapse whitespace, and trim non-alphanumeric characters at
/// both ends.
pub fn fold(s: &str) -> String {
    let collapsed = s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
    collapsed.trim_matches(|c: char| !c.is_alphanumeric()).to_string()
}

/// `1 − levenshtein(fold a, fold b) / max(|fold a|, |fold b|)` over
/// characters; two empty folds are identical.
pub fn similarity(a: &str, b: &str) -> f64 {
    let (fa, fb) = (fold(a), fold(b));
    let longest = fa.chars().count().max(fb.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - strsim::levenshtein(&fa, &fb) as f64 / longest as f64
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Single-linkage clusters of the distinct mentions at similarity
/// `≥ threshold`. Canonical form is the most frequent member, then the
/// longest, then the lexicographically smallest. Clusters are ordered by
/// total count descending, then canonical.
pub fn cluster_entities<S: AsRef<str>>(mentions: &[S], threshold: f64) -> Vec<EntityCluster> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for m in mentions {
        *counts.entry(m.as_ref().to_string()).or_insert(0) += 1;
    }
    cluster_counts(&counts, threshold)
}

/// As [`cluster_entities`] over precounted distinct mentions.
pub fn cluster_counts(counts: &BTreeMap<String, usize>, threshold: f64) -> Vec<EntityCluster> {
    let items: Vec<(&String, usize)> = counts.iter().filter(|(_, &c)| c > 0).map(|(s, &c)| (s, c)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if similarity(items[i].0, items[j].0) >= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeMap<String, usize>> = BTreeMap::new();
    for (i, (s, c)) in items.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().insert((*s).clone(), *c);
    }
    let mut clusters: Vec<EntityCluster> = groups
        .into_values()
        .map(|members| {
            let canonical = members
                .iter()
                .max_by(|(a, ca), (b, cb)| ca.cmp(cb).then(a.chars().count().cmp(&b.chars().count())).then(b.cmp(a)))
                .map(|(s, _)| s.clone())
                .expect("cluster has members");
            EntityCluster { canonical, members }
        })
        .collect();
    clusters.sort_by(|a, b| b.total().cmp(&a.total()).then_with(|| a.canonical.cmp(&b.canonical)));
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_strings_share_a_cluster() {
        let c = cluster_entities(&["MNIST", "MNIST"], DEFAULT_THRESHOLD);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].members["MNIST"], 2);
    }

    #[test]
    fn disjoint_names_separate() {
        assert_eq!(similarity("MNIST", "CIFAR"), 0.0);
        assert_eq!(cluster_entities(&["MNIST", "CIFAR"], DEFAULT_THRESHOLD).len(), 2);
        assert!(cluster_entities::<&str>(&[], DEFAULT_THRESHOLD).is_empty());
    }

    #[test]
    fn cifar_variants_merge() {
        assert_eq!(similarity("CIFAR-10", "CIFAR10"), 0.875);
        let c = cluster_entities(&["CIFAR-10", "CIFAR10", "CIFAR-10"], DEFAULT_THRESHOLD);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].canonical, "CIFAR-10");
    }

    #[test]
    fn fold_trims_and_collapses() {
        assert_eq!(fold("  (ImageNet   Large). "), "imagenet   large".split_whitespace().collect::<Vec<_>>().join(" "));
        assert_eq!(similarity("Penn  Treebank", "penn treebank,"), 1.0);
    }

    #[test]
    fn canonical_tie_breaks() {
        let c = cluster_entities(&["ResNet", "ResNets"], 0.8);
        assert_eq!(c[0].canonical, "ResNets");
        let c = cluster_entities(&["abcd", "abce"], 0.7);
        assert_eq!(c[0].canonical, "abcd");
    }
}
