//! Corpus-level trend queries over extraction records: code hosting
//! shares, category shares, entity rankings and co-usage, topic trends,
//! memory quantiles, hardware vendor shares and pairwise comparisons.

mod matching;
mod memory;
mod output;
mod queries;

pub use matching::{corpus_keys, paper_matches};
pub use memory::{memory_stats_by_year, parse_memory_gb, quantile_lower, MemoryStats, YearMemory};
pub use output::{Table, TrendSeries};
pub use queries::{
    co_usage, host_share_by_year, manufacturer_share, pairwise_trend, share_by_category, top_entities, topic_trend,
    BRANDS,
};

#[cfg(test)]
mod tests;
