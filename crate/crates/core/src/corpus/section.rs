use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Abstract,
    Introduction,
    Conclusion,
    Method,
    Experiment,
    Related,
    Other,
}

/// Per-kind header keywords, checked in priority order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionKeywords {
    pub lists: Vec<(SectionKind, Vec<String>)>,
}

impl Default for SectionKeywords {
    fn default() -> Self {
        let kw = |words: &[&str]| words.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        SectionKeywords {
            lists: vec![
                (SectionKind::Abstract, kw(&["abstract"])),
                (SectionKind::Introduction, kw(&["introduction", "overview"])),
                (SectionKind::Conclusion, kw(&["conclusion", "concluding", "summary", "discussion"])),
                (SectionKind::Method, kw(&["method", "approach", "model", "architecture"])),
                (SectionKind::Experiment, kw(&["experiment", "evaluation", "result"])),
                (SectionKind::Related, kw(&["related", "background"])),
            ],
        }
    }
}

impl SectionKeywords {
    /// A header matches a keyword when one of its words starts with it,
    /// ignoring case ("Experimental" matches "experiment").
    pub fn classify(&self, header: &str) -> SectionKind {
        let lowered = header.to_lowercase();
        let words: Vec<&str> = lowered.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).collect();
        for (kind, keywords) in &self.lists {
            if keywords.iter().any(|k| words.iter().any(|w| w.starts_with(k.as_str()))) {
                return *kind;
            }
        }
        SectionKind::Other
    }
}

/// Classifies a section header with the default keyword lists.
pub fn classify_section(header: &str) -> SectionKind {
    SectionKeywords::default().classify(header)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers() {
        assert_eq!(classify_section("1 Introduction"), SectionKind::Introduction);
        assert_eq!(classify_section("Concluding Remarks"), SectionKind::Conclusion);
        assert_eq!(classify_section("Proof of Lemma 3"), SectionKind::Other);
        assert_eq!(classify_section("ABSTRACT"), SectionKind::Abstract);
        assert_eq!(classify_section("4. Experimental Results"), SectionKind::Experiment);
        assert_eq!(classify_section("Related Work"), SectionKind::Related);
    }

    #[test]
    fn priority_order_wins() {
        // both "discussion" and "results" appear; conclusion outranks experiment
        assert_eq!(classify_section("Results and Discussion"), SectionKind::Conclusion);
        assert_eq!(classify_section("Introduction and Background"), SectionKind::Introduction);
    }
}
