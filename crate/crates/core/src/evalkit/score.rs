use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{url_match, EvalError};
use crate::extract::{similarity, EntityCluster, PaperExtraction};
use crate::Facet;

/// Any member of `cluster` is at least `threshold` similar to `gold`.
pub fn entity_match(gold: &str, cluster: &EntityCluster, threshold: f64) -> bool {
    cluster.members.keys().any(|m| similarity(gold, m) >= threshold)
}

/// Match counts for one facet; pooled by adding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetCounts {
    pub n_gold: usize,
    pub matched_gold: usize,
    pub n_pred: usize,
    pub matched_pred: usize,
}

impl FacetCounts {
    pub fn precision(&self) -> Option<f64> {
        (self.n_pred > 0).then(|| self.matched_pred as f64 / self.n_pred as f64)
    }

    pub fn recall(&self) -> Option<f64> {
        (self.n_gold > 0).then(|| self.matched_gold as f64 / self.n_gold as f64)
    }

    fn add(&mut self, o: &FacetCounts) {
        self.n_gold += o.n_gold;
        self.matched_gold += o.matched_gold;
        self.n_pred += o.n_pred;
        self.matched_pred += o.matched_pred;
    }
}

/// Predictions for one facet of one document.
#[derive(Debug, Clone, Copy)]
pub enum Predictions<'a> {
    Urls(&'a [String]),
    Clusters(&'a [EntityCluster]),
}

/// Set-based matching without one-to-one assignment: a gold counts when
/// any prediction matches it, and a prediction counts when it matches any
/// gold.
pub fn score_facet(golds: &[String], predictions: Predictions<'_>, threshold: f64) -> FacetCounts {
    type Matcher<'m> = Box<dyn Fn(&str, usize) -> bool + 'm>;
    let (n_pred, matches): (usize, Matcher<'_>) = match predictions {
        Predictions::Urls(urls) => (urls.len(), Box::new(move |g, i| url_match(g, &urls[i]))),
        Predictions::Clusters(cs) => (cs.len(), Box::new(move |g, i| entity_match(g, &cs[i], threshold))),
    };
    FacetCounts {
        n_gold: golds.len(),
        matched_gold: golds.iter().filter(|g| (0..n_pred).any(|i| matches(g, i))).count(),
        n_pred,
        matched_pred: (0..n_pred).filter(|&i| golds.iter().any(|g| matches(g, i))).count(),
    }
}

/// Gold strings per facet for one document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldRecord {
    pub doc_id: String,
    pub facets: BTreeMap<Facet, Vec<String>>,
}

impl GoldRecord {
    pub fn validate(&self) -> Result<(), EvalError> {
        for (facet, golds) in &self.facets {
            if golds.iter().any(|g| g.trim().is_empty()) {
                return Err(EvalError::Invalid(format!("{}: empty gold string for {facet}", self.doc_id)));
            }
        }
        Ok(())
    }
}

pub fn parse_gold(text: &str) -> Result<Vec<GoldRecord>, EvalError> {
    let mut out: Vec<GoldRecord> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let g: GoldRecord =
            serde_json::from_str(line).map_err(|e| EvalError::Invalid(format!("gold line {}: {e}", i + 1)))?;
        g.validate()?;
        if out.iter().any(|o| o.doc_id == g.doc_id) {
            return Err(EvalError::Invalid(format!("duplicate gold record `{}`", g.doc_id)));
        }
        out.push(g);
    }
    Ok(out)
}

/// Scores every gold facet of one document against its extraction (or
/// against nothing when the document was not extracted).
pub fn score_document(
    gold: &GoldRecord,
    extraction: Option<&PaperExtraction>,
    threshold: f64,
) -> BTreeMap<Facet, FacetCounts> {
    gold.facets
        .iter()
        .map(|(facet, golds)| {
            let counts = match (facet, extraction) {
                (_, None) => score_facet(golds, Predictions::Clusters(&[]), threshold),
                (Facet::SourceCode, Some(x)) => {
                    let urls: Vec<String> = x.source_code_urls.iter().map(|(u, _)| u.clone()).collect();
                    score_facet(golds, Predictions::Urls(&urls), threshold)
                }
                (f, Some(x)) => score_facet(golds, Predictions::Clusters(x.entities(*f)), threshold),
            };
            (*facet, counts)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Averaging {
    /// Counts summed over documents before dividing.
    #[default]
    Pooled,
    /// Mean of per-document values that are defined.
    PerDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetReport {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub documents: usize,
    #[serde(flatten)]
    pub counts: FacetCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub averaging: Averaging,
    pub facets: BTreeMap<Facet, FacetReport>,
    pub macro_precision: Option<f64>,
    pub macro_recall: Option<f64>,
    pub macro_f1: Option<f64>,
}

/// Harmonic mean; 0 when either side is 0.
pub fn macro_f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = values.collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

/// Per-facet P/R (pooled or per-document) and their unweighted macro means.
pub fn macro_report(per_doc: &[BTreeMap<Facet, FacetCounts>], averaging: Averaging) -> Result<EvalReport, EvalError> {
    if per_doc.is_empty() {
        return Err(EvalError::NoDocuments);
    }
    let mut facets: BTreeMap<Facet, FacetReport> = BTreeMap::new();
    let mut per_facet: BTreeMap<Facet, Vec<FacetCounts>> = BTreeMap::new();
    for doc in per_doc {
        for (f, c) in doc {
            per_facet.entry(*f).or_default().push(*c);
        }
    }
    for (facet, docs) in per_facet {
        let mut pooled = FacetCounts::default();
        docs.iter().for_each(|c| pooled.add(c));
        let (precision, recall) = match averaging {
            Averaging::Pooled => (pooled.precision(), pooled.recall()),
            Averaging::PerDocument => (
                mean(docs.iter().filter_map(FacetCounts::precision)),
                mean(docs.iter().filter_map(FacetCounts::recall)),
            ),
        };
        facets.insert(facet, FacetReport { precision, recall, documents: docs.len(), counts: pooled });
    }
    let macro_precision = mean(facets.values().filter_map(|f| f.precision));
    let macro_recall = mean(facets.values().filter_map(|f| f.recall));
    if macro_precision.is_none() && macro_recall.is_none() {
        return Err(EvalError::NothingDefined);
    }
    let macro_f1 = match (macro_precision, macro_recall) {
        (Some(p), Some(r)) => Some(macro_f1(p, r)),
        _ => None,
    };
    Ok(EvalReport { averaging, facets, macro_precision, macro_recall, macro_f1 })
}

/// Scores all gold documents against extractions matched by document id.
pub fn evaluate(
    golds: &[GoldRecord],
    extractions: &[PaperExtraction],
    threshold: f64,
    averaging: Averaging,
) -> Result<EvalReport, EvalError> {
    let by_id: BTreeMap<&str, &PaperExtraction> = extractions.iter().map(|x| (x.doc_id.as_str(), x)).collect();
    let per_doc: Vec<_> =
        golds.iter().map(|g| score_document(g, by_id.get(g.doc_id.as_str()).copied(), threshold)).collect();
    macro_report(&per_doc, averaging)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.6}"))
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `facet,precision,recall,n_gold,matched_gold,n_pred,matched_pred`
    /// rows then a `macro` row; absent values are empty cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("facet,precision,recall,f1,n_gold,matched_gold,n_pred,matched_pred\n");
        for (facet, r) in &self.facets {
            let f1 = match (r.precision, r.recall) {
                (Some(p), Some(rc)) => Some(macro_f1(p, rc)),
                _ => None,
            };
            out.push_str(&format!(
                "{facet},{},{},{},{},{},{},{}\n",
                fmt_opt(r.precision),
                fmt_opt(r.recall),
                fmt_opt(f1),
                r.counts.n_gold,
                r.counts.matched_gold,
                r.counts.n_pred,
                r.counts.matched_pred
            ));
        }
        out.push_str(&format!(
            "macro,{},{},{},,,,\n",
            fmt_opt(self.macro_precision),
            fmt_opt(self.macro_recall),
            fmt_opt(self.macro_f1)
        ));
        out
    }
}
