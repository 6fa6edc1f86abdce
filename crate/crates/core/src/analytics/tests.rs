use std::collections::BTreeMap;

use super::*;
use crate::extract::{cluster_entities, PaperExtraction};
use crate::Facet;

fn paper(id: &str, year: i32, tags: &[&str], urls: &[&str], facets: &[(Facet, &[&str])]) -> PaperExtraction {
    PaperExtraction {
        doc_id: id.into(),
        year,
        category_tags: tags.iter().map(|s| s.to_string()).collect(),
        facet_entities: facets
            .iter()
            .map(|(f, ms)| (*f, ms.iter().flat_map(|m| cluster_entities(&[*m], 1.0)).collect()))
            .collect(),
        source_code_urls: urls.iter().map(|u| (u.to_string(), "s1".to_string())).collect(),
        provenance: BTreeMap::new(),
    }
}

#[test]
fn host_share_two_of_five() {
    let mut ps: Vec<_> = (0..5)
        .map(|i| {
            let url = if i < 2 { "https://github.com/a/b" } else { "https://bitbucket.org/a/b" };
            paper(&format!("p{i}"), 2019, &["cs.LG"], &[url], &[])
        })
        .collect();
    ps.push(paper("none", 2019, &["cs.LG"], &[], &[]));
    ps.push(paper("old", 2015, &["cs.LG"], &[], &[]));
    let s = host_share_by_year(&ps, "github.com");
    assert_eq!(s.points, BTreeMap::from([(2019, 40.0)]));
}

#[test]
fn category_shares() {
    let mut ps: Vec<_> = (0..8)
        .map(|i| paper(&format!("p{i}"), 2019, &["cs.CV"], if i < 5 { &["github.com/x/y"] } else { &[] }, &[]))
        .collect();
    ps.push(paper("q", 2019, &["cs.CL", "cs.CV"], &["github.com/q/r"], &[]));
    let shares = share_by_category(&ps);
    assert_eq!(shares[0], ("cs.CL".to_string(), 100.0));
    assert!((shares[1].1 - 600.0 / 9.0).abs() < 1e-12);
}

#[test]
fn entity_ranking_and_co_usage() {
    let ps = vec![
        paper("a", 2018, &[], &[], &[(Facet::Dataset, &["MNIST", "CIFAR-10"])]),
        paper("b", 2018, &[], &[], &[(Facet::Dataset, &["MNIST ", "CIFAR10"])]),
        paper("c", 2019, &[], &[], &[(Facet::Dataset, &["MNIST", "SVHN"])]),
        paper("d", 2019, &[], &[], &[(Facet::Dataset, &["MNIST dataset"])]),
    ];
    let top = top_entities(&ps, Facet::Dataset, 10);
    assert_eq!(top[0], ("MNIST".to_string(), 3));
    assert!(top.contains(&("MNIST dataset".to_string(), 1)));
    assert!(top_entities(&ps, Facet::Dataset, 0).is_empty());
    let co = co_usage(&ps, Facet::Dataset, "MNIST", Facet::Dataset, 5);
    assert_eq!(co[0].1, 2);
    assert!(co[0].0.starts_with("CIFAR"));
    assert!(co.iter().all(|(k, _)| k.trim() != "MNIST"));
    assert!(co_usage(&ps, Facet::Dataset, "ImageNet", Facet::Task, 5).is_empty());
}

#[test]
fn topic_and_pairwise_trends() {
    let ps = vec![
        paper("a", 2019, &[], &[], &[(Facet::LanguageLibrary, &["Python", "C"])]),
        paper("b", 2019, &[], &[], &[(Facet::LanguageLibrary, &["python", "C++"])]),
        paper("c", 2020, &[], &[], &[(Facet::LanguageLibrary, &["Java"])]),
    ];
    assert_eq!(topic_trend(&ps, Facet::LanguageLibrary, "Python").points, BTreeMap::from([(2019, 2.0)]));
    assert_eq!(topic_trend(&ps, Facet::LanguageLibrary, "C").points, BTreeMap::from([(2019, 1.0)]));
    assert!(topic_trend(&ps, Facet::LanguageLibrary, "Rust").is_empty());
    let (py, java) = pairwise_trend(&ps, Facet::LanguageLibrary, "Python", "Java");
    assert_eq!(py.points, BTreeMap::from([(2019, 2.0), (2020, 0.0)]));
    assert_eq!(java.points, BTreeMap::from([(2019, 0.0), (2020, 1.0)]));
    let (x, y) = pairwise_trend(&ps, Facet::LanguageLibrary, "Java", "Java");
    assert_eq!(x.points, y.points);
    let (e1, e2) = pairwise_trend(&[], Facet::LanguageLibrary, "Python", "Java");
    assert!(e1.is_empty() && e2.is_empty());
}

#[test]
fn memory_rules() {
    assert_eq!(parse_memory_gb("16GB RAM"), vec![16.0]);
    assert_eq!(parse_memory_gb("512 MB and 1TB"), vec![0.5, 1024.0]);
    assert_eq!(parse_memory_gb("NVIDIA P100"), Vec::<f64>::new());
    let ps = vec![
        paper("a", 2019, &[], &[], &[(Facet::ComputingResources, &["16GB RAM", "11 GB"])]),
        paper("b", 2019, &[], &[], &[(Facet::ComputingResources, &["GPU"])]),
    ];
    let m = memory_stats_by_year(&ps);
    assert_eq!(m[&2019], YearMemory { q1: 16.0, median: 16.0, q3: 16.0, n: 1 });
    let v = [8.0, 16.0, 16.0, 32.0, 32.0];
    assert_eq!((quantile_lower(&v, 0.25), quantile_lower(&v, 0.5), quantile_lower(&v, 0.75)), (16.0, 16.0, 32.0));
}

#[test]
fn vendor_exclusion() {
    let ps = vec![
        paper("a", 2018, &[], &[], &[(Facet::ComputingResources, &["Intel CPU and NVIDIA GPU"])]),
        paper("b", 2018, &[], &[], &[(Facet::ComputingResources, &["NVIDIA Tesla P100"])]),
        paper("c", 2018, &[], &[], &[(Facet::ComputingResources, &["nvidia GPUs", "NVIDIA"])]),
        paper("d", 2018, &[], &[], &[(Facet::ComputingResources, &["Intel Xeon"])]),
    ];
    let s = manufacturer_share(&ps);
    assert_eq!(s[0].label, "intel");
    assert_eq!(s[0].points[&2018], 1.0);
    assert_eq!(s[1].points[&2018], 2.0);
    assert_eq!(s[2].points[&2018], 0.0);
}

#[test]
fn csv_layout() {
    let mut s = TrendSeries::new("github.com");
    s.points.insert(2019, 40.0);
    s.points.insert(2020, 12.5);
    assert_eq!(Table::from_series(&[s]).to_csv(), "year,label,value\n2019,github.com,40\n2020,github.com,12.5000\n");
    let t = Table::from_ranking([("a,b".to_string(), 2.0)]);
    assert_eq!(t.to_csv(), "year,label,value\nall,\"a,b\",2\n");
}
