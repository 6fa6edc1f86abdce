// Corpus-level trend queries over extraction records.

use std::error::Error;
use std::path::Path;

use facetex::analytics::{host_share_by_year, memory_stats_by_year, pairwise_trend, top_entities, Table};
use facetex::extract::parse_extractions;
use facetex::Facet;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/analytics.jsonl");
    let records = parse_extractions(&std::fs::read_to_string(path)?)?;

    let github = host_share_by_year(&records, "github.com");
    print!("{}", Table::from_series(&[github]).to_csv());

    println!("top datasets:");
    for (name, n) in top_entities(&records, Facet::Dataset, 3) {
        println!("  {name}: {n}");
    }

    let (tf, pt) = pairwise_trend(&records, Facet::LanguageLibrary, "TensorFlow", "PyTorch");
    print!("{}", Table::from_series(&[tf, pt]).to_csv());

    for (year, m) in memory_stats_by_year(&records) {
        println!("{year}: memory GB q1 {} median {} q3 {} (n={})", m.q1, m.median, m.q3, m.n);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
