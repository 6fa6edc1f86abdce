use std::collections::BTreeMap;

use super::*;
use crate::extract::{cluster_entities, EntityCluster};
use crate::Facet;

fn clusters(names: &[&str]) -> Vec<EntityCluster> {
    names.iter().flat_map(|n| cluster_entities(&[*n], 0.85)).collect()
}

fn golds(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[test]
fn entity_match_rules() {
    let c = clusters(&["MNIST"]);
    assert!(entity_match("MNIST", &c[0], 0.85));
    assert!(!entity_match("MNIST", &clusters(&["CIFAR"])[0], 0.85));
    assert!(entity_match("anything", &c[0], 0.0));
}

#[test]
fn score_facet_examples() {
    let one = score_facet(&golds(&["A"]), Predictions::Clusters(&clusters(&["A"])), 0.85);
    assert_eq!((one.precision(), one.recall()), (Some(1.0), Some(1.0)));
    let partial =
        score_facet(&golds(&["Alpha", "Beta"]), Predictions::Clusters(&clusters(&["Alpha", "Gamma", "Delta"])), 0.85);
    assert_eq!(partial.precision(), Some(1.0 / 3.0));
    assert_eq!(partial.recall(), Some(0.5));
    let none = score_facet(&golds(&["A"]), Predictions::Clusters(&[]), 0.85);
    assert_eq!((none.precision(), none.recall()), (None, Some(0.0)));
    let urls = vec!["https://github.com/pwc".to_string(), "https://example.org/x".to_string()];
    let u = score_facet(&golds(&["github.com/pwc/pwc-data"]), Predictions::Urls(&urls), 0.85);
    assert_eq!((u.precision(), u.recall()), (Some(0.5), Some(1.0)));
}

fn counts(n_gold: usize, matched_gold: usize, n_pred: usize, matched_pred: usize) -> FacetCounts {
    FacetCounts { n_gold, matched_gold, n_pred, matched_pred }
}

#[test]
fn macro_f1_from_macro_means() {
    let doc = BTreeMap::from([(Facet::Dataset, counts(100, 53, 100, 33))]);
    let r = macro_report(&[doc], Averaging::Pooled).unwrap();
    assert!((r.macro_f1.unwrap() - 0.41).abs() < 0.005);
    let perfect = BTreeMap::from([(Facet::Task, counts(2, 2, 3, 3))]);
    assert_eq!(macro_report(&[perfect], Averaging::Pooled).unwrap().macro_f1, Some(1.0));
    assert_eq!(macro_f1(0.0, 0.7), 0.0);
    assert_eq!(macro_f1(0.3, 0.6), macro_f1(0.6, 0.3));
}

#[test]
fn pooled_versus_per_document() {
    let a = BTreeMap::from([(Facet::Dataset, counts(1, 1, 1, 1))]);
    let b = BTreeMap::from([(Facet::Dataset, counts(3, 0, 1, 0))]);
    let pooled = macro_report(&[a.clone(), b.clone()], Averaging::Pooled).unwrap();
    assert_eq!(pooled.facets[&Facet::Dataset].recall, Some(0.25));
    let per_doc = macro_report(&[a, b], Averaging::PerDocument).unwrap();
    assert_eq!(per_doc.facets[&Facet::Dataset].recall, Some(0.5));
}

#[test]
fn undefined_everywhere_is_an_error() {
    let empty = BTreeMap::from([(Facet::Dataset, counts(0, 0, 0, 0))]);
    assert!(matches!(macro_report(&[empty], Averaging::Pooled), Err(EvalError::NothingDefined)));
    assert!(matches!(macro_report(&[], Averaging::Pooled), Err(EvalError::NoDocuments)));
}

#[test]
fn gold_jsonl_and_report_outputs() {
    let text = r#"{"doc_id":"p1","facets":{"dataset":["MNIST"],"source_code":["github.com/a/b"]}}"#;
    let g = parse_gold(text).unwrap();
    assert_eq!(g[0].facets[&Facet::SourceCode], vec!["github.com/a/b".to_string()]);
    let r = evaluate(&g, &[], 0.85, Averaging::Pooled).unwrap();
    assert_eq!(r.macro_recall, Some(0.0));
    assert_eq!(r.macro_precision, None);
    assert!(r.to_csv().lines().last().unwrap().starts_with("macro,,0.000000,"));
    assert!(r.to_json().contains("\"macro_precision\": null"));
    assert!(parse_gold(r#"{"doc_id":"p1","facets":{"dataset":[""]}}"#).is_err());
}
