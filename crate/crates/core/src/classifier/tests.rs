use super::*;
use crate::corpus::DocumentRecord;
use crate::corpus::Sentence;
use crate::testutil::{doc, section};
use crate::Facet;

fn corpus(n_docs: usize, per_doc: usize) -> Vec<DocumentRecord> {
    (0..n_docs)
        .map(|d| {
            let sents =
                (0..per_doc).map(|i| Sentence::new(format!("s{i}"), &format!("Sentence {i} of doc {d}."))).collect();
            doc(&format!("d{d:02}"), vec![section("sec", "Method", sents)], vec![])
        })
        .collect()
}

fn ids(corpus: &[DocumentRecord], n: usize) -> Vec<(String, String)> {
    corpus.iter().flat_map(|d| d.sentences().map(move |s| (d.doc_id.clone(), s.sentence_id.clone()))).take(n).collect()
}

#[test]
fn default_split_sizes() {
    let c = corpus(50, 10);
    let set = build_training_set(&ids(&c, 100), &c, 2.0, &SplitSpec::default()).unwrap();
    assert_eq!(set.examples.iter().filter(|e| e.label).count(), 100);
    assert_eq!(set.examples.iter().filter(|e| !e.label).count(), 200);
    assert_eq!((set.count(Split::Train), set.count(Split::Dev), set.count(Split::Test)), (255, 30, 15));
    let again = build_training_set(&ids(&c, 100), &c, 2.0, &SplitSpec::default()).unwrap();
    assert_eq!(set, again);
    assert_eq!(TrainingSet::from_jsonl(&set.to_jsonl()).unwrap().examples, set.examples);
}

#[test]
fn negatives_capped_with_warning() {
    let c = corpus(15, 10);
    let set = build_training_set(&ids(&c, 100), &c, 2.0, &SplitSpec::default()).unwrap();
    assert_eq!(set.examples.iter().filter(|e| !e.label).count(), 50);
    assert_eq!(set.warnings.len(), 1);
    assert!(matches!(build_training_set(&[], &c, 2.0, &SplitSpec::default()), Err(ClassifierError::NoPositives)));
}

#[test]
fn document_level_split_keeps_documents_together() {
    let c = corpus(30, 10);
    let spec = SplitSpec { by_document: true, ..SplitSpec::default() };
    let set = build_training_set(&ids(&c, 100), &c, 2.0, &spec).unwrap();
    let mut seen = std::collections::BTreeMap::new();
    for e in &set.examples {
        assert_eq!(*seen.entry(e.doc_id.clone()).or_insert(e.split), e.split);
    }
}

fn feats(words: &[&str]) -> SentenceFeatures {
    let mut f = SentenceFeatures::new();
    f.insert("bias".into(), 1.0);
    for w in words {
        *f.entry(format!("u={w}")).or_insert(0.0) += 1.0;
    }
    f
}

fn separable() -> Vec<(SentenceFeatures, bool)> {
    vec![
        (feats(&["code", "github"]), true),
        (feats(&["code", "release"]), true),
        (feats(&["github"]), true),
        (feats(&["results", "table"]), false),
        (feats(&["table"]), false),
        (feats(&["baseline", "results"]), false),
    ]
}

#[test]
fn separable_set_is_fit() {
    let out = train_logreg(Facet::SourceCode, &separable(), &separable(), &LogregConfig::default()).unwrap();
    let acc = separable().iter().filter(|(f, y)| out.model.classify(f) == *y).count();
    assert_eq!(acc, 6);
    assert_eq!(out.dev.unwrap().f1, Some(1.0));
    let again = train_logreg(Facet::SourceCode, &separable(), &[], &LogregConfig::default()).unwrap();
    assert_eq!(out.model, again.model);
    let back = SentClassifierModel::from_json(&out.model.to_json()).unwrap();
    assert_eq!(back, out.model);
}

#[test]
fn heavy_regularization_gives_prior() {
    let mut data = separable();
    data.push((feats(&["code"]), true));
    let cfg = LogregConfig { l2_lambda: 1e6, epochs: 200, ..LogregConfig::default() };
    let out = train_logreg(Facet::SourceCode, &data, &[], &cfg).unwrap();
    assert!(out.model.weights.values().all(|w| w.abs() < 1e-3));
    let p = out.model.predict_prob(&feats(&["anything"]));
    assert!((p - 4.0 / 7.0).abs() < 0.05, "{p}");
}

#[test]
fn single_class_rejected() {
    let data = vec![(feats(&["a"]), true), (feats(&["b"]), true)];
    assert!(matches!(
        train_logreg(Facet::Dataset, &data, &[], &LogregConfig::default()),
        Err(ClassifierError::SingleClass)
    ));
}

#[test]
fn zero_model_and_thresholds() {
    let mut m = SentClassifierModel::zero(Facet::Dataset);
    assert_eq!(m.predict_prob(&feats(&["x"])), 0.5);
    m.weights.insert("u=x".into(), 0.7);
    assert!(m.predict_prob(&feats(&["x", "x"])) > m.predict_prob(&feats(&["x"])));
    m.decision_threshold = 1.0;
    m.weights.insert("u=x".into(), 1000.0);
    assert!(!m.classify(&feats(&["x"])));
}

#[test]
fn logreg_gradient_matches_central_differences() {
    let data = vec![
        SparseExample { features: vec![(0, 1.0), (1, 2.0)], label: true },
        SparseExample { features: vec![(1, 1.0), (2, 1.0)], label: false },
        SparseExample { features: vec![(0, 3.0)], label: false },
    ];
    let w = vec![0.3, -0.2, 0.5];
    let (b, lambda, h) = (0.1, 0.2, 1e-6);
    let (_, g, gb) = logreg_loss_and_gradient(&w, b, &data, lambda);
    for i in 0..3 {
        let mut up = w.clone();
        up[i] += h;
        let mut dn = w.clone();
        dn[i] -= h;
        let fd = (logreg_loss_and_gradient(&up, b, &data, lambda).0
            - logreg_loss_and_gradient(&dn, b, &data, lambda).0)
            / (2.0 * h);
        assert!((fd - g[i]).abs() <= 1e-4 * fd.abs().max(1e-3));
    }
    let fd_b = (logreg_loss_and_gradient(&w, b + h, &data, lambda).0
        - logreg_loss_and_gradient(&w, b - h, &data, lambda).0)
        / (2.0 * h);
    assert!((fd_b - gb).abs() <= 1e-4 * fd_b.abs().max(1e-3));
}
