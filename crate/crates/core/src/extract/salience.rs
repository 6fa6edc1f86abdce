use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{cluster_counts, fold, EntityCluster, ExtractError};
use crate::corpus::{DocumentRecord, SectionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MentionType {
    Task,
    Method,
    Material,
    Metric,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum RelationType {
    UsedFor,
    PartOf,
    FeatureOf,
    HyponymOf,
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationType::UsedFor => "USED-FOR",
            RelationType::PartOf => "PART-OF",
            RelationType::FeatureOf => "FEATURE-OF",
            RelationType::HyponymOf => "HYPONYM-OF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mention {
    pub text: String,
    #[serde(rename = "type")]
    pub mention_type: MentionType,
    pub section_id: String,
    pub sentence_id: String,
}

/// Typed mentions and relations of one document from an external
/// extractor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationGraphDoc {
    pub doc_id: String,
    pub mentions: Vec<Mention>,
    /// `(mention index, mention index, type)`.
    pub relations: Vec<(usize, usize, RelationType)>,
}

impl RelationGraphDoc {
    pub fn validate(&self) -> Result<(), ExtractError> {
        let n = self.mentions.len();
        if let Some((i, j, r)) = self.relations.iter().find(|(i, j, _)| *i >= n || *j >= n) {
            return Err(ExtractError::Invalid(format!(
                "{}: relation ({i}, {j}, {r}) points past {n} mentions",
                self.doc_id
            )));
        }
        Ok(())
    }
}

/// Reads one graph per line, validated, keyed by document id.
pub fn parse_relation_graphs(text: &str) -> Result<BTreeMap<String, RelationGraphDoc>, ExtractError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let g: RelationGraphDoc = serde_json::from_str(line)
            .map_err(|e| ExtractError::Invalid(format!("relation graph line {}: {e}", i + 1)))?;
        g.validate()?;
        if out.contains_key(&g.doc_id) {
            return Err(ExtractError::Invalid(format!("duplicate relation graph for `{}`", g.doc_id)));
        }
        out.insert(g.doc_id.clone(), g);
    }
    Ok(out)
}

/// Salient tasks and methods with the sentence ids that support them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SalienceResult {
    pub tasks: Vec<EntityCluster>,
    pub methods: Vec<EntityCluster>,
    pub task_sentences: Vec<String>,
    pub method_sentences: Vec<String>,
}

fn salient_section(doc: &DocumentRecord, section_id: &str) -> bool {
    doc.section(section_id)
        .is_some_and(|s| matches!(s.kind, SectionKind::Abstract | SectionKind::Introduction | SectionKind::Conclusion))
}

/// Task–method pairs from the abstract, introduction and conclusion:
/// direct `USED-FOR` links first; failing those, any undirected path of at
/// most `max_path_len` relations between a task and a method. Survivors are
/// weighted by how often their text occurs anywhere in the graph, then
/// clustered at `threshold`.
pub fn select_task_method(
    graph: &RelationGraphDoc,
    doc: &DocumentRecord,
    max_path_len: usize,
    threshold: f64,
) -> Result<SalienceResult, ExtractError> {
    if graph.doc_id != doc.doc_id {
        return Err(ExtractError::DocMismatch(graph.doc_id.clone(), doc.doc_id.clone()));
    }
    graph.validate()?;
    let keep: Vec<bool> = graph.mentions.iter().map(|m| salient_section(doc, &m.section_id)).collect();
    let is = |i: usize, t: MentionType| keep[i] && graph.mentions[i].mention_type == t;

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j, r) in &graph.relations {
        if r != RelationType::UsedFor {
            continue;
        }
        if is(i, MentionType::Task) && is(j, MentionType::Method) {
            pairs.insert((i, j));
        } else if is(j, MentionType::Task) && is(i, MentionType::Method) {
            pairs.insert((j, i));
        }
    }
    if pairs.is_empty() {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); graph.mentions.len()];
        for &(i, j, _) in &graph.relations {
            if keep[i] && keep[j] && i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for start in (0..graph.mentions.len()).filter(|&i| is(i, MentionType::Task)) {
            let mut dist = vec![usize::MAX; graph.mentions.len()];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                if dist[u] == max_path_len {
                    continue;
                }
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            for m in (0..graph.mentions.len()).filter(|&m| is(m, MentionType::Method) && dist[m] != usize::MAX) {
                pairs.insert((start, m));
            }
        }
    }

    let mut frequency: BTreeMap<String, usize> = BTreeMap::new();
    for m in &graph.mentions {
        *frequency.entry(fold(&m.text)).or_insert(0) += 1;
    }
    let collect = |idx: BTreeSet<usize>| {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut sentences: Vec<String> = Vec::new();
        for i in idx {
            let m = &graph.mentions[i];
            counts.insert(m.text.clone(), frequency[&fold(&m.text)]);
            if !sentences.contains(&m.sentence_id) {
                sentences.push(m.sentence_id.clone());
            }
        }
        (cluster_counts(&counts, threshold), sentences)
    };
    let (tasks, task_sentences) = collect(pairs.iter().map(|p| p.0).collect());
    let (methods, method_sentences) = collect(pairs.iter().map(|p| p.1).collect());
    Ok(SalienceResult { tasks, methods, task_sentences, method_sentences })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Sentence;
    use crate::testutil::{doc, section};

    fn fixture() -> DocumentRecord {
        doc(
            "p1",
            vec![
                section("intro", "Introduction", vec![Sentence::new("s1", "We use a CNN for image classification.")]),
                section("meth", "Method", vec![Sentence::new("s2", "The CNN has layers.")]),
            ],
            vec![],
        )
    }

    fn mention(text: &str, t: MentionType, sec: &str, sent: &str) -> Mention {
        Mention { text: text.into(), mention_type: t, section_id: sec.into(), sentence_id: sent.into() }
    }

    #[test]
    fn direct_used_for() {
        let g = RelationGraphDoc {
            doc_id: "p1".into(),
            mentions: vec![
                mention("image classification", MentionType::Task, "intro", "s1"),
                mention("CNN", MentionType::Method, "intro", "s1"),
            ],
            relations: vec![(1, 0, RelationType::UsedFor)],
        };
        let r = select_task_method(&g, &fixture(), 3, 0.85).unwrap();
        assert_eq!(r.tasks.len(), 1);
        assert_eq!(r.tasks[0].canonical, "image classification");
        assert_eq!(r.methods[0].canonical, "CNN");
        assert_eq!(r.task_sentences, vec!["s1".to_string()]);
    }

    #[test]
    fn method_section_only_is_empty() {
        let g = RelationGraphDoc {
            doc_id: "p1".into(),
            mentions: vec![
                mention("image classification", MentionType::Task, "meth", "s2"),
                mention("CNN", MentionType::Method, "meth", "s2"),
            ],
            relations: vec![(1, 0, RelationType::UsedFor)],
        };
        let r = select_task_method(&g, &fixture(), 3, 0.85).unwrap();
        assert!(r.tasks.is_empty() && r.methods.is_empty());
    }

    #[test]
    fn two_hop_chain_found_by_search() {
        let g = RelationGraphDoc {
            doc_id: "p1".into(),
            mentions: vec![
                mention("image classification", MentionType::Task, "intro", "s1"),
                mention("vision system", MentionType::Generic, "intro", "s1"),
                mention("CNN", MentionType::Method, "intro", "s1"),
            ],
            relations: vec![(0, 1, RelationType::PartOf), (2, 1, RelationType::UsedFor)],
        };
        let r = select_task_method(&g, &fixture(), 3, 0.85).unwrap();
        assert_eq!(r.tasks[0].canonical, "image classification");
        assert_eq!(r.methods[0].canonical, "CNN");
        let short = select_task_method(&g, &fixture(), 1, 0.85).unwrap();
        assert!(short.tasks.is_empty());
    }

    #[test]
    fn graph_json_and_validation() {
        let line = r#"{"doc_id":"p1","mentions":[{"text":"a","type":"Task","section_id":"intro","sentence_id":"s1"}],"relations":[[0,3,"USED-FOR"]]}"#;
        assert!(parse_relation_graphs(line).is_err());
        let ok = line.replace("[0,3,", "[0,0,");
        let graphs = parse_relation_graphs(&ok).unwrap();
        assert_eq!(graphs["p1"].relations[0].2, RelationType::UsedFor);
        let mut other = graphs["p1"].clone();
        other.doc_id = "zz".into();
        assert!(matches!(select_task_method(&other, &fixture(), 3, 0.85), Err(ExtractError::DocMismatch(..))));
    }
}
