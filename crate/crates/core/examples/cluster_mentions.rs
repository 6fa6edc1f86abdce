// Merge surface variants of entity mentions by normalized edit similarity.

use std::error::Error;

use facetex::extract::{cluster_entities, similarity, DEFAULT_THRESHOLD};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mentions = ["CIFAR-10", "CIFAR10", "cifar-10", "ImageNet", "Imagenet", "ImageNet.", "Penn Treebank", "SQuAD"];
    println!("similarity(CIFAR-10, CIFAR10) = {:.3}", similarity("CIFAR-10", "CIFAR10"));
    for threshold in [DEFAULT_THRESHOLD, 0.95] {
        println!("threshold {threshold}:");
        for c in cluster_entities(&mentions, threshold) {
            println!("  {} x{} {:?}", c.canonical, c.total(), c.members);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
