use std::collections::BTreeMap;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::extract::PaperExtraction;
use crate::Facet;

/// Quartiles of per-paper memory (GB) for one year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YearMemory {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub n: usize,
}

pub type MemoryStats = BTreeMap<i32, YearMemory>;

fn memory_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)(\d+(?:\.\d+)?)\s*(gib|mib|gb|mb|tb|g)\b").expect("valid regex"))
}

/// Memory quantities in a string, converted to GB.
pub fn parse_memory_gb(text: &str) -> Vec<f64> {
    memory_re()
        .captures_iter(text)
        .filter_map(|c| {
            let v: f64 = c[1].parse().ok()?;
            let factor = match c[2].to_lowercase().as_str() {
                "mb" | "mib" => 1.0 / 1024.0,
                "tb" => 1024.0,
                _ => 1.0,
            };
            Some(v * factor)
        })
        .collect()
}

/// Element at `floor(p·(n−1))` of sorted values.
pub fn quantile_lower(sorted: &[f64], p: f64) -> f64 {
    let idx = (p * (sorted.len() - 1) as f64).floor() as usize;
    sorted[idx]
}

/// Largest memory quantity among a paper's computing-resource members.
fn paper_memory(p: &PaperExtraction) -> Option<f64> {
    p.entities(Facet::ComputingResources)
        .iter()
        .flat_map(|c| c.members.keys())
        .flat_map(|m| parse_memory_gb(m))
        .reduce(f64::max)
}

/// Per-year lower-interpolated quartiles of the per-paper maximum memory.
pub fn memory_stats_by_year(extractions: &[PaperExtraction]) -> MemoryStats {
    let mut by_year: BTreeMap<i32, Vec<f64>> = BTreeMap::new();
    for p in extractions {
        if let Some(gb) = paper_memory(p) {
            by_year.entry(p.year).or_default().push(gb);
        }
    }
    by_year
        .into_iter()
        .map(|(year, mut v)| {
            v.sort_by(f64::total_cmp);
            let stats = YearMemory {
                q1: quantile_lower(&v, 0.25),
                median: quantile_lower(&v, 0.5),
                q3: quantile_lower(&v, 0.75),
                n: v.len(),
            };
            (year, stats)
        })
        .collect()
}
