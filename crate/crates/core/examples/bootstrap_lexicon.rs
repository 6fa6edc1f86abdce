// Grow a seed lexicon from part-of-speech context patterns and emit CORLL stubs.

use std::error::Error;
use std::path::Path;

use facetex::bootstrap::{
    bootstrap_iterate, emit_annotation_stubs, seed_sentences, BootstrapConfig, CorllLabel, SeedLexicon,
};
use facetex::corpus::{attach_parse_dir, load_corpus};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let (docs, _, _) = attach_parse_dir(load_corpus(&fixtures.join("docs"))?, &fixtures.join("parses"))?;
    let config = BootstrapConfig::default();
    let stoplist = config.stoplist();

    let mut lexicons = Vec::new();
    for label in [CorllLabel::ProgrammingLanguage, CorllLabel::ProgrammingLibrary] {
        let seeds = SeedLexicon::default_for(label);
        let before = seeds.terms.len();
        let grown = bootstrap_iterate(&docs, seeds, config.threshold, config.max_iters, &stoplist)?;
        println!("{}: {} seeds, {} after bootstrapping", grown.facet_label, before, grown.terms.len());
        lexicons.push(grown);
    }

    let sentences = seed_sentences(&docs, &lexicons);
    let stubs = emit_annotation_stubs(&sentences);
    for stub in stubs.iter().take(3) {
        println!("stub: {}", stub.text);
    }
    println!("{} sentences mention a lexicon term", stubs.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
