use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PatternError;

/// Which weakly-supervised generator a rule set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleFacet {
    SourceCode,
    Dataset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Subj,
    Root,
    Obj,
    AdjAdv,
    RelClVerb,
    RootNumber,
    AdjClNumber,
    HasReference,
    HasFootnoteUrl,
    GazetteerName,
}

impl Slot {
    pub const ALL: [Slot; 10] = [
        Slot::Subj,
        Slot::Root,
        Slot::Obj,
        Slot::AdjAdv,
        Slot::RelClVerb,
        Slot::RootNumber,
        Slot::AdjClNumber,
        Slot::HasReference,
        Slot::HasFootnoteUrl,
        Slot::GazetteerName,
    ];

    /// Slots decided by sentence surface properties rather than a lexicon.
    pub fn is_surface(self) -> bool {
        matches!(self, Slot::HasReference | Slot::HasFootnoteUrl | Slot::GazetteerName)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Slot::Subj => "subj",
            Slot::Root => "root",
            Slot::Obj => "obj",
            Slot::AdjAdv => "adj_adv",
            Slot::RelClVerb => "rel_cl_verb",
            Slot::RootNumber => "root_number",
            Slot::AdjClNumber => "adj_cl_number",
            Slot::HasReference => "has_reference",
            Slot::HasFootnoteUrl => "has_footnote_url",
            Slot::GazetteerName => "gazetteer_name",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DependencyPatternRule {
    pub facet: RuleFacet,
    pub slot: Slot,
    /// Lowercase entries; multiword entries are space separated.
    pub lexicon: Vec<String>,
}

/// The rules for one facet plus the dataset-name gazetteer.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet {
    pub facet: RuleFacet,
    pub rules: Vec<DependencyPatternRule>,
    pub gazetteer: Vec<String>,
}

impl RuleSet {
    pub fn rule(&self, slot: Slot) -> Option<&DependencyPatternRule> {
        self.rules.iter().find(|r| r.slot == slot)
    }
}

/// Everything the candidate generators need, loadable from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PatternConfig {
    pub source_code: BTreeMap<Slot, Vec<String>>,
    pub dataset: BTreeMap<Slot, Vec<String>>,
    pub exclusion: Vec<String>,
    pub gazetteer: Vec<String>,
    pub material_lemmas: Vec<String>,
    pub span_threshold: f64,
    pub min_distinct_slots: usize,
    pub min_occurrences: usize,
    /// Source-code candidates must match the adjective/adverb or object slot.
    pub require_adj_or_obj: bool,
    /// Apply the exclusion list to dataset candidates as well.
    pub exclude_in_dataset: bool,
    pub lookahead: usize,
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

impl Default for PatternConfig {
    fn default() -> Self {
        let mut source_code = BTreeMap::new();
        let mut subj = words("it we model implementation");
        subj.extend(["source code".to_string(), "supplementary material".to_string()]);
        source_code.insert(Slot::Subj, subj);
        source_code.insert(Slot::Root, words("is are find release"));
        let mut obj = words("github website open-source implementation");
        obj.extend(["project page".to_string(), "supplementary material".to_string()]);
        source_code.insert(Slot::Obj, obj);
        source_code.insert(Slot::AdjAdv, words("publicly available online opensource open-source supplementary"));

        let mut dataset = BTreeMap::new();
        dataset.insert(Slot::Subj, words("performance paper we dataset experiment"));
        dataset.insert(
            Slot::Root,
            words(
                "make utilize adopt create construct include consist perform introduce contain \
                 feed is use implement evaluate release focus conduct constitute",
            ),
        );
        let mut obj = words("database dataset github website repository online collection benchmark");
        obj.push("numerical study".to_string());
        dataset.insert(Slot::Obj, obj);
        dataset
            .insert(Slot::AdjAdv, words("publicly available online large-scale constructed synthetic dataset popular"));
        dataset.insert(
            Slot::RelClVerb,
            words(
                "generate provide utilize adopt create construct include consist introduce \
                 contain feed use release",
            ),
        );
        dataset.insert(Slot::RootNumber, words("include consist contain constitute compose comprise"));
        dataset.insert(Slot::AdjClNumber, words("compose consist comprise"));
        for slot in [Slot::HasReference, Slot::HasFootnoteUrl, Slot::GazetteerName] {
            dataset.insert(slot, Vec::new());
        }

        PatternConfig {
            source_code,
            dataset,
            exclusion: words("figure table fig tab section equation"),
            gazetteer: [
                "MNIST",
                "CIFAR",
                "CIFAR-10",
                "CIFAR-100",
                "ImageNet",
                "COCO",
                "SQuAD",
                "WikiText",
                "Penn Treebank",
                "SemEval",
                "IMDB",
                "Kinetics",
                "Cityscapes",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            material_lemmas: words("dataset corpus database benchmark collection"),
            span_threshold: 0.25,
            min_distinct_slots: 2,
            min_occurrences: 3,
            require_adj_or_obj: true,
            exclude_in_dataset: true,
            lookahead: 5,
        }
    }
}

impl PatternConfig {
    pub fn from_path(path: &Path) -> Result<Self, PatternError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| PatternError::Config(format!("{}: {e}", path.display())))?;
        let cfg: PatternConfig =
            serde_json::from_str(&text).map_err(|e| PatternError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), PatternError> {
        if !(self.span_threshold > 0.0 && self.span_threshold <= 1.0) {
            return Err(PatternError::Config(format!("span_threshold must be in (0,1], got {}", self.span_threshold)));
        }
        for (slot, lex) in self.source_code.iter().chain(self.dataset.iter()) {
            if slot.is_surface() && !lex.is_empty() {
                return Err(PatternError::Config(format!("slot {} takes no lexicon", slot.as_str())));
            }
        }
        Ok(())
    }

    pub fn rule_set(&self, facet: RuleFacet) -> RuleSet {
        let table = match facet {
            RuleFacet::SourceCode => &self.source_code,
            RuleFacet::Dataset => &self.dataset,
        };
        RuleSet {
            facet,
            rules: table
                .iter()
                .map(|(slot, lex)| DependencyPatternRule {
                    facet,
                    slot: *slot,
                    lexicon: lex.iter().map(|w| w.to_lowercase()).collect(),
                })
                .collect(),
            gazetteer: self.gazetteer.clone(),
        }
    }
}
