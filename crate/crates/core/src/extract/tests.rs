use super::*;
use crate::classifier::SentClassifierModel;
use crate::corpus::{DocumentRecord, NoteEntry, Sentence};
use crate::labeler::{CrfModel, Featurizer, LabelScheme, Tag};
use crate::testutil::{doc, parsed, section};
use crate::Facet;

fn dataset_doc() -> DocumentRecord {
    doc(
        "p1",
        vec![section(
            "exp",
            "Experiments",
            vec![
                parsed("s1", "We|we|PRON|2|nsubj use|use|VERB|0|root the|the|DET|5|det MNIST|MNIST|PROPN|5|compound dataset|dataset|NOUN|2|obj .|.|PUNCT|2|punct"),
                parsed("s2", "Results|result|NOUN|2|nsubj improve|improve|VERB|0|root .|.|PUNCT|2|punct"),
                parsed("s3", "We|we|PRON|2|nsubj test|test|VERB|0|root on|on|ADP|4|case CIFAR-10|CIFAR-10|PROPN|2|obl and|and|CCONJ|6|cc CIFAR10|CIFAR10|PROPN|4|conj dataset|dataset|NOUN|4|appos"),
            ],
        )],
        vec![],
    )
}

fn oracle_sentence_model(facet: Facet, word: &str) -> SentClassifierModel {
    let mut m = SentClassifierModel::zero(facet);
    m.bias = -3.0;
    m.weights.insert(format!("u={word}"), 6.0);
    m
}

fn oracle_crf(names: &[&str]) -> CrfModel {
    let mut m = CrfModel::new(LabelScheme::new(["Dataset"]).unwrap(), Featurizer::default(), Vec::new(), 0.0);
    for n in names {
        m.set_emission(&format!("w[0]={n}"), Tag::Unit(0), 10.0);
    }
    m
}

#[test]
fn planted_dataset_sentence_yields_mnist() {
    let d = dataset_doc();
    let (clusters, prov) = run_facet_pipeline(
        &d,
        Facet::Dataset,
        &oracle_sentence_model(Facet::Dataset, "dataset"),
        &oracle_crf(&["mnist"]),
        None,
        DEFAULT_THRESHOLD,
    )
    .unwrap();
    assert_eq!(clusters.len(), 1);
    assert_eq!(clusters[0].canonical, "MNIST");
    assert_eq!(prov, vec!["s1".to_string()]);
}

#[test]
fn cifar_variants_cluster_together() {
    let d = dataset_doc();
    let (clusters, _) = run_facet_pipeline(
        &d,
        Facet::Dataset,
        &oracle_sentence_model(Facet::Dataset, "dataset"),
        &oracle_crf(&["cifar-10", "cifar10"]),
        None,
        DEFAULT_THRESHOLD,
    )
    .unwrap();
    assert_eq!(clusters.len(), 1);
    assert_eq!(clusters[0].total(), 2);
}

#[test]
fn nothing_positive_means_no_clusters() {
    let d = dataset_doc();
    let mut strict = SentClassifierModel::zero(Facet::Dataset);
    strict.bias = -5.0;
    let (clusters, prov) =
        run_facet_pipeline(&d, Facet::Dataset, &strict, &oracle_crf(&["mnist"]), None, DEFAULT_THRESHOLD).unwrap();
    assert!(clusters.is_empty() && prov.is_empty());
}

#[test]
fn mismatched_models_rejected_before_inference() {
    let d = dataset_doc();
    let wrong = oracle_sentence_model(Facet::SourceCode, "dataset");
    assert!(matches!(
        run_facet_pipeline(&d, Facet::Dataset, &wrong, &oracle_crf(&[]), None, DEFAULT_THRESHOLD),
        Err(ExtractError::FacetMismatch { .. })
    ));
    let mut stale = oracle_crf(&[]);
    stale.feature_template_version = "old".into();
    assert!(matches!(
        run_facet_pipeline(
            &d,
            Facet::Dataset,
            &oracle_sentence_model(Facet::Dataset, "x"),
            &stale,
            None,
            DEFAULT_THRESHOLD
        ),
        Err(ExtractError::Model(_))
    ));
}

fn code_doc() -> DocumentRecord {
    let mut s1 = Sentence::new("s1", "Our code is available online.");
    s1.footnote_marks = vec!["fn1".into()];
    let s2 = Sentence::new("s2", "The code is at https://github.com/a/b and more.");
    let s3 = Sentence::new("s3", "See https://example.org for the results.");
    doc(
        "p2",
        vec![section("intro", "Introduction", vec![s1, s2, s3])],
        vec![NoteEntry {
            id: "fn1".into(),
            text: "https://github.com/a/b".into(),
            urls: vec!["https://github.com/a/b".into()],
        }],
    )
}

#[test]
fn footnote_url_attributed_once() {
    let d = code_doc();
    let urls = extract_source_urls(&d, &oracle_sentence_model(Facet::SourceCode, "code"), None).unwrap();
    assert_eq!(urls, vec![("https://github.com/a/b".to_string(), "s1".to_string())]);
    let mut none = SentClassifierModel::zero(Facet::SourceCode);
    none.bias = -5.0;
    assert!(extract_source_urls(&d, &none, None).unwrap().is_empty());
}

#[test]
fn merge_and_round_trip() {
    let d = code_doc();
    let empty = merge_document_extractions(&d, vec![]).unwrap();
    assert!(empty.facet_entities.is_empty() && empty.provenance.is_empty());
    let parts = vec![
        FacetExtraction {
            doc_id: "p2".into(),
            facet: Some(Facet::Dataset),
            clusters: cluster_entities(&["MNIST"], DEFAULT_THRESHOLD),
            provenance: vec!["s1".into()],
            ..FacetExtraction::default()
        },
        FacetExtraction {
            doc_id: "p2".into(),
            facet: Some(Facet::SourceCode),
            source_code_urls: vec![("https://github.com/a/b".into(), "s2".into())],
            provenance: vec!["s2".into()],
            ..FacetExtraction::default()
        },
    ];
    let rec = merge_document_extractions(&d, parts.clone()).unwrap();
    assert_eq!(rec.entities(Facet::Dataset), parts[0].clusters.as_slice());
    assert_eq!(rec.source_code_urls, parts[1].source_code_urls);
    assert_eq!(parse_extractions(&rec.to_json_line()).unwrap(), vec![rec]);
    let mut foreign = parts[0].clone();
    foreign.doc_id = "other".into();
    assert!(matches!(merge_document_extractions(&d, vec![foreign]), Err(ExtractError::DocMismatch(..))));
}
