// Load paper JSON, attach dependency parses, and persist a corpus store.

use std::error::Error;
use std::path::Path;

use facetex::corpus::{attach_parse_dir, load_corpus, load_store, write_store, Manifest};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let docs = load_corpus(&fixtures.join("docs"))?;
    let (docs, warnings, failures) = attach_parse_dir(docs, &fixtures.join("parses"))?;
    for w in &warnings {
        println!("warning: {w}");
    }
    assert!(failures.is_empty());

    let store = tempfile::tempdir()?;
    let manifest = write_store(store.path(), &docs, Manifest::default())?;
    println!(
        "{} documents, {} sentences, {} parsed",
        manifest.documents, manifest.sentences, manifest.parsed_sentences
    );

    let reloaded = load_store(store.path())?;
    assert_eq!(reloaded, docs);
    let doc = &reloaded[0];
    for s in doc.sentences().filter(|s| !s.urls.is_empty()) {
        println!("{} {}: {:?}", doc.doc_id, s.sentence_id, s.urls);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
