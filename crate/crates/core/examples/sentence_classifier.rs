// Turn weak source-code labels into a training set and fit the sentence classifier.

use std::collections::BTreeMap;
use std::error::Error;
use std::path::Path;

use facetex::classifier::{
    build_training_set, facet_rules, sentence_features, train_logreg, LogregConfig, Split, SplitSpec,
};
use facetex::corpus::{attach_parse_dir, load_corpus, DocumentRecord};
use facetex::patterns::{source_code_candidates, PatternConfig};
use facetex::Facet;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let (docs, _, _) = attach_parse_dir(load_corpus(&fixtures.join("docs"))?, &fixtures.join("parses"))?;
    let patterns = PatternConfig::default();
    let rules = facet_rules(Facet::SourceCode, &patterns).expect("source code has pattern rules");

    let positives: Vec<(String, String)> = docs
        .iter()
        .flat_map(|d| source_code_candidates(d, &rules, &patterns).candidates)
        .map(|c| (c.doc_id, c.sentence_id))
        .collect();
    let set = build_training_set(&positives, &docs, 2.0, &SplitSpec::default())?;

    let by_id: BTreeMap<&str, &DocumentRecord> = docs.iter().map(|d| (d.doc_id.as_str(), d)).collect();
    let featurize = |split: Split| {
        set.split(split)
            .map(|e| {
                let doc = by_id[e.doc_id.as_str()];
                let s = doc.sentence(&e.sentence_id).expect("labeled sentence exists");
                (sentence_features(doc, s, Some(&rules)), e.label)
            })
            .collect::<Vec<_>>()
    };
    let (train, dev) = (featurize(Split::Train), featurize(Split::Dev));
    let outcome = train_logreg(Facet::SourceCode, &train, &dev, &LogregConfig::default())?;
    println!("{} training examples, {} dev", train.len(), dev.len());
    println!("objective {:.4} -> {:.4}", outcome.trace[0], outcome.trace[outcome.trace.len() - 1]);
    if let Some(m) = outcome.dev {
        println!("dev {m:?}");
    }

    let doc = &docs[0];
    let hits: Vec<&str> = doc
        .sentences()
        .filter(|s| outcome.model.classify(&sentence_features(doc, s, Some(&rules))))
        .map(|s| s.text.as_str())
        .collect();
    println!("{}: {hits:?}", doc.doc_id);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
