use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{cluster_entities, select_task_method, EntityCluster, ExtractError, RelationGraphDoc, DEFAULT_THRESHOLD};
use crate::classifier::{facet_rules, sentence_features, SentClassifierModel};
use crate::corpus::{DocumentRecord, Sentence};
use crate::labeler::CrfModel;
use crate::patterns::{span_surface, PatternConfig, RuleSet};
use crate::Facet;

/// Extracted facets of one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaperExtraction {
    pub doc_id: String,
    pub year: i32,
    pub category_tags: Vec<String>,
    pub facet_entities: BTreeMap<Facet, Vec<EntityCluster>>,
    /// `(url, sentence_id)` in first-occurrence order.
    pub source_code_urls: Vec<(String, String)>,
    pub provenance: BTreeMap<Facet, Vec<String>>,
}

impl PaperExtraction {
    pub fn entities(&self, facet: Facet) -> &[EntityCluster] {
        self.facet_entities.get(&facet).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("extraction serializes")
    }
}

/// Output of one facet for one document.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FacetExtraction {
    pub doc_id: String,
    pub facet: Option<Facet>,
    pub clusters: Vec<EntityCluster>,
    pub source_code_urls: Vec<(String, String)>,
    pub provenance: Vec<String>,
}

/// Sentence model plus, for labeler facets, the sequence model.
#[derive(Debug, Clone)]
pub struct FacetModels {
    pub sentence: SentClassifierModel,
    pub crf: Option<CrfModel>,
}

/// Everything needed to extract all facets from a document.
#[derive(Debug, Clone)]
pub struct Extractor {
    pub models: BTreeMap<Facet, FacetModels>,
    pub patterns: PatternConfig,
    pub cluster_threshold: f64,
    pub max_path_len: usize,
}

impl Extractor {
    pub fn new(models: BTreeMap<Facet, FacetModels>, patterns: PatternConfig) -> Self {
        Extractor { models, patterns, cluster_threshold: DEFAULT_THRESHOLD, max_path_len: 3 }
    }

    /// Rejects models whose facet or feature templates do not fit.
    pub fn check(&self) -> Result<(), ExtractError> {
        for (facet, m) in &self.models {
            check_models(*facet, &m.sentence, m.crf.as_ref())?;
        }
        Ok(())
    }

    /// Runs every configured facet, plus task/method when a graph is given.
    pub fn extract_document(
        &self,
        doc: &DocumentRecord,
        graph: Option<&RelationGraphDoc>,
    ) -> Result<PaperExtraction, ExtractError> {
        let mut parts = Vec::new();
        for (facet, m) in &self.models {
            let rules = facet_rules(*facet, &self.patterns);
            if *facet == Facet::SourceCode {
                let urls = extract_source_urls(doc, &m.sentence, rules.as_ref())?;
                let mut provenance: Vec<String> = Vec::new();
                for (_, s) in &urls {
                    if !provenance.contains(s) {
                        provenance.push(s.clone());
                    }
                }
                parts.push(FacetExtraction {
                    doc_id: doc.doc_id.clone(),
                    facet: Some(*facet),
                    source_code_urls: urls,
                    provenance,
                    ..FacetExtraction::default()
                });
            } else if let Some(crf) = &m.crf {
                let (clusters, provenance) =
                    run_facet_pipeline(doc, *facet, &m.sentence, crf, rules.as_ref(), self.cluster_threshold)?;
                parts.push(FacetExtraction {
                    doc_id: doc.doc_id.clone(),
                    facet: Some(*facet),
                    clusters,
                    provenance,
                    ..FacetExtraction::default()
                });
            }
        }
        if let Some(graph) = graph {
            let r = select_task_method(graph, doc, self.max_path_len, self.cluster_threshold)?;
            for (facet, clusters, provenance) in
                [(Facet::Task, r.tasks, r.task_sentences), (Facet::Method, r.methods, r.method_sentences)]
            {
                parts.push(FacetExtraction {
                    doc_id: doc.doc_id.clone(),
                    facet: Some(facet),
                    clusters,
                    provenance,
                    ..FacetExtraction::default()
                });
            }
        }
        merge_document_extractions(doc, parts)
    }
}

fn check_models(facet: Facet, sentence: &SentClassifierModel, crf: Option<&CrfModel>) -> Result<(), ExtractError> {
    if sentence.facet != facet {
        return Err(ExtractError::FacetMismatch { expected: facet, found: sentence.facet });
    }
    sentence.validate().map_err(|e| ExtractError::Model(e.to_string()))?;
    if let Some(crf) = crf {
        crf.check_template().map_err(|e| ExtractError::Model(e.to_string()))?;
    }
    Ok(())
}

/// Sentences the classifier accepts, in document order.
pub fn positive_sentences<'a>(
    doc: &'a DocumentRecord,
    model: &SentClassifierModel,
    rules: Option<&RuleSet>,
) -> Vec<&'a Sentence> {
    doc.sentences().filter(|s| model.classify(&sentence_features(doc, s, rules))).collect()
}

/// Classifies sentences, tags the positive parsed ones, and clusters the
/// decoded mentions of the facet's entity types. Returns clusters and the
/// ids of sentences that contributed a mention.
pub fn run_facet_pipeline(
    doc: &DocumentRecord,
    facet: Facet,
    sent_model: &SentClassifierModel,
    crf_model: &CrfModel,
    rules: Option<&RuleSet>,
    threshold: f64,
) -> Result<(Vec<EntityCluster>, Vec<String>), ExtractError> {
    check_models(facet, sent_model, Some(crf_model))?;
    let wanted: Vec<usize> = facet.entity_types().iter().filter_map(|t| crf_model.scheme.type_index(t)).collect();
    let mut mentions = Vec::new();
    let mut provenance = Vec::new();
    for s in positive_sentences(doc, sent_model, rules) {
        let Some(tokens) = s.tokens.as_deref() else {
            log::debug!("{}/{}: positive but unparsed, skipped", doc.doc_id, s.sentence_id);
            continue;
        };
        let before = mentions.len();
        for span in crf_model.predict_spans(tokens) {
            if wanted.contains(&span.label) {
                mentions.push(span_surface(tokens, span.start, span.end));
            }
        }
        if mentions.len() > before {
            provenance.push(s.sentence_id.clone());
        }
    }
    Ok((cluster_entities(&mentions, threshold), provenance))
}

/// URLs of accepted sentences: in the text, then in referenced footnotes,
/// then in cited references; each URL kept once with its first sentence.
pub fn extract_source_urls(
    doc: &DocumentRecord,
    sent_model: &SentClassifierModel,
    rules: Option<&RuleSet>,
) -> Result<Vec<(String, String)>, ExtractError> {
    check_models(Facet::SourceCode, sent_model, None)?;
    let mut out: Vec<(String, String)> = Vec::new();
    for s in positive_sentences(doc, sent_model, rules) {
        for url in doc.linked_urls(s) {
            if !out.iter().any(|(u, _)| *u == url) {
                out.push((url, s.sentence_id.clone()));
            }
        }
    }
    Ok(out)
}

/// Assembles per-facet parts into one record. Facets with nothing
/// extracted are left out of the maps.
pub fn merge_document_extractions(
    doc: &DocumentRecord,
    parts: Vec<FacetExtraction>,
) -> Result<PaperExtraction, ExtractError> {
    let mut out = PaperExtraction {
        doc_id: doc.doc_id.clone(),
        year: doc.year,
        category_tags: doc.category_tags.clone(),
        facet_entities: BTreeMap::new(),
        source_code_urls: Vec::new(),
        provenance: BTreeMap::new(),
    };
    for part in parts {
        if part.doc_id != doc.doc_id {
            return Err(ExtractError::DocMismatch(part.doc_id, doc.doc_id.clone()));
        }
        for id in &part.provenance {
            if doc.sentence(id).is_none() {
                return Err(ExtractError::Invalid(format!(
                    "{}: provenance sentence `{id}` not in document",
                    doc.doc_id
                )));
            }
        }
        for (url, sid) in part.source_code_urls {
            if !out.source_code_urls.iter().any(|(u, _)| *u == url) {
                out.source_code_urls.push((url, sid));
            }
        }
        let Some(facet) = part.facet else { continue };
        if !part.clusters.is_empty() {
            out.facet_entities.entry(facet).or_default().extend(part.clusters);
        }
        if !part.provenance.is_empty() {
            out.provenance.entry(facet).or_default().extend(part.provenance);
        }
    }
    Ok(out)
}
