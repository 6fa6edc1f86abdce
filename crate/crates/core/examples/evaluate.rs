// Score predicted facet entities against gold annotations.

use std::error::Error;
use std::path::Path;

use facetex::evalkit::{evaluate, parse_gold, url_match, Averaging};
use facetex::extract::{parse_extractions, DEFAULT_THRESHOLD};

const PREDICTIONS: &str = r#"{"doc_id":"doc01","year":2018,"category_tags":[],"facet_entities":{"dataset":[{"canonical":"CIFAR10","members":{"CIFAR10":2}}],"method":[{"canonical":"ResNet","members":{"ResNet":1}}]},"source_code_urls":[["http://www.github.com/lab01/resnet-01/tree/main","s8"]],"provenance":{}}
{"doc_id":"doc02","year":2018,"category_tags":[],"facet_entities":{"dataset":[{"canonical":"ImageNet","members":{"ImageNet":1}},{"canonical":"MNIST","members":{"MNIST":1}}],"task":[{"canonical":"image classification","members":{"image classification":1}}]},"source_code_urls":[],"provenance":{}}
"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let gold_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus/gold.jsonl");
    let golds: Vec<_> = parse_gold(&std::fs::read_to_string(gold_path)?)?
        .into_iter()
        .filter(|g| g.doc_id == "doc01" || g.doc_id == "doc02")
        .collect();
    let predictions = parse_extractions(PREDICTIONS)?;

    assert!(url_match("https://github.com/lab01/resnet-01", "http://www.github.com/lab01/resnet-01/tree/main"));
    for averaging in [Averaging::Pooled, Averaging::PerDocument] {
        let report = evaluate(&golds, &predictions, DEFAULT_THRESHOLD, averaging)?;
        println!(
            "{averaging:?}: macro P {:?} R {:?} F1 {:?}",
            report.macro_precision, report.macro_recall, report.macro_f1
        );
        print!("{}", report.to_csv());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
