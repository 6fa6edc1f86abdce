use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The six extracted facets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Facet {
    SourceCode,
    Dataset,
    Task,
    Method,
    ComputingResources,
    LanguageLibrary,
}

impl Facet {
    pub const ALL: [Facet; 6] = [
        Facet::SourceCode,
        Facet::Dataset,
        Facet::Task,
        Facet::Method,
        Facet::ComputingResources,
        Facet::LanguageLibrary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Facet::SourceCode => "source_code",
            Facet::Dataset => "dataset",
            Facet::Task => "task",
            Facet::Method => "method",
            Facet::ComputingResources => "computing_resources",
            Facet::LanguageLibrary => "language_library",
        }
    }

    /// Entity types the sequence labeler emits for this facet. Empty for
    /// facets that are not extracted by the labeler.
    pub fn entity_types(self) -> &'static [&'static str] {
        match self {
            Facet::Dataset => &["Dataset"],
            Facet::ComputingResources => &["ComputePlatform", "ComputeTime", "HardwareResource"],
            Facet::LanguageLibrary => &["ProgrammingLanguage", "ProgrammingLibrary"],
            Facet::SourceCode | Facet::Task | Facet::Method => &[],
        }
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "unknown facet `{0}` (expected one of source_code, dataset, task, method, computing_resources, language_library)"
)]
pub struct UnknownFacet(pub String);

impl FromStr for Facet {
    type Err = UnknownFacet;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Facet::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| UnknownFacet(s.to_string()))
    }
}
