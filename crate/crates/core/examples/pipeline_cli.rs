// The full command-line workflow: ingest, weak labels, training, prediction, evaluation.

use std::error::Error;
use std::ffi::OsString;
use std::path::Path;

fn facetex(args: &[&str]) -> Result<(), Box<dyn Error>> {
    let argv: Vec<OsString> = std::iter::once("facetex").chain(args.iter().copied()).map(OsString::from).collect();
    match facetex::cli::run(argv) {
        0 => Ok(()),
        code => Err(format!("`facetex {}` exited with {code}", args.join(" ")).into()),
    }
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let work = tempfile::tempdir()?;
    let config = work.path().join("run.json");
    let body = serde_json::json!({
        "corpus_dir": fixtures.join("docs"),
        "parses_dir": fixtures.join("parses"),
        "output_dir": "out",
        "models_dir": "models",
    });
    std::fs::write(&config, body.to_string())?;
    let cfg = config.to_string_lossy().into_owned();
    let relgraph = fixtures.join("relgraph.jsonl").to_string_lossy().into_owned();
    let gold = fixtures.join("gold.jsonl").to_string_lossy().into_owned();

    facetex(&["--config", &cfg, "ingest"])?;
    facetex(&["--config", &cfg, "genlabels", "--facet", "source_code"])?;
    facetex(&["--config", &cfg, "genlabels", "--facet", "dataset"])?;
    facetex(&["--config", &cfg, "train", "sentence", "--facet", "source_code"])?;
    facetex(&["--config", &cfg, "train", "sentence", "--facet", "dataset"])?;
    facetex(&["--config", &cfg, "train", "ner", "--facet", "dataset"])?;
    facetex(&["--config", &cfg, "predict", "--facets", "source_code,dataset,task,method", "--relgraph", &relgraph])?;
    let predictions = work.path().join("out/predictions.jsonl").to_string_lossy().into_owned();
    let report = work.path().join("out/eval").to_string_lossy().into_owned();
    facetex(&["--config", &cfg, "eval", "--gold", &gold, "--predictions", &predictions, "--out", &report])?;

    print!("{}", std::fs::read_to_string(work.path().join("out/eval/report.csv"))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
