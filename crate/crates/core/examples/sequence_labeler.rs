// Train a linear-chain CRF on BILUO-tagged sentences and decode held-out spans.

use std::error::Error;
use std::path::Path;

use facetex::bootstrap::load_labeled_jsonl;
use facetex::labeler::{train_crf, Featurizer, LabelScheme, TrainConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ner_synthetic.jsonl");
    let labels = vec!["ProgrammingLanguage".to_string(), "ProgrammingLibrary".to_string()];
    let data = load_labeled_jsonl(&path, &labels)?;
    println!("span histogram {:?}", data.histogram);

    let scheme = LabelScheme::new(labels.iter().cloned())?;
    let tagged = data.records.iter().map(|r| r.to_tagged(&scheme)).collect::<Result<Vec<_>, _>>()?;
    let (train, held_out) = tagged.split_at(tagged.len() - 10);

    let config = TrainConfig { epochs: 15, ..TrainConfig::default() };
    let outcome = train_crf(train, scheme, Featurizer::default(), &config)?;
    println!("objective {:.4} -> {:.4}", outcome.trace[0], outcome.trace[outcome.trace.len() - 1]);

    let model = &outcome.model;
    let (mut correct, mut total) = (0, 0);
    for sentence in held_out {
        let decoded = model.viterbi(&sentence.tokens);
        correct += decoded.tags.iter().zip(&sentence.tags).filter(|(p, g)| p == g).count();
        total += sentence.tags.len();
    }
    println!("held-out token accuracy {:.3}", correct as f64 / total as f64);

    let first = &held_out[0];
    for span in model.predict_spans(&first.tokens) {
        let words: Vec<&str> = first.tokens[span.start..=span.end].iter().map(|t| t.surface.as_str()).collect();
        println!("{} -> {}", words.join(" "), model.scheme.entity_types()[span.label]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
