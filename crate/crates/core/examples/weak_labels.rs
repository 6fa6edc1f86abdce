// Dependency-pattern weak supervision for source-code and dataset sentences.

use std::error::Error;
use std::path::Path;

use facetex::corpus::{attach_parse_dir, load_corpus};
use facetex::patterns::{
    dataset_candidates, dataset_entity_candidates, source_code_candidates, PatternConfig, RuleFacet,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let (docs, _, _) = attach_parse_dir(load_corpus(&fixtures.join("docs"))?, &fixtures.join("parses"))?;
    let config = PatternConfig::default();

    let code_rules = config.rule_set(RuleFacet::SourceCode);
    let data_rules = config.rule_set(RuleFacet::Dataset);
    let (mut code, mut data) = (0, 0);
    for doc in &docs {
        for c in source_code_candidates(doc, &code_rules, &config).candidates {
            println!(
                "source code: {}/{} slots {:?}",
                c.doc_id,
                c.sentence_id,
                c.report.counts.keys().collect::<Vec<_>>()
            );
            code += 1;
        }
        for c in dataset_candidates(doc, &data_rules, &config).candidates {
            let sentence = doc.sentence(&c.sentence_id).expect("candidate sentence exists");
            let spans: Vec<String> = dataset_entity_candidates(sentence, &c.report, &config)
                .into_iter()
                .map(|s| format!("{} ({:.2})", s.surface, s.score))
                .collect();
            println!("dataset: {}/{} +{} {:?}", c.doc_id, c.sentence_id, c.trigger_distance, spans);
            data += 1;
        }
    }
    println!("{code} source-code and {data} dataset candidates");
    assert!(code > 0 && data > 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
