//! Weak-supervision generators for the source-code and dataset facets.
//!
//! Sentences are matched against dependency-slot lexicons; a sentence with
//! at least two matched slots and three occurrences becomes a candidate.
//! Dataset sentences are additionally mined for capitalized noun-phrase
//! spans scored by dependency distance.

mod candidates;
mod config;
mod matcher;
mod sdp;
mod spans;

pub use candidates::{dataset_candidates, source_code_candidates, CandidateRun, CandidateSentence};
pub use config::{DependencyPatternRule, PatternConfig, RuleFacet, RuleSet, Slot};
pub use matcher::{match_rules, PatternMatchReport};
pub use sdp::shortest_dependency_path;
pub use spans::{dataset_entity_candidates, ScoredSpan};

pub use spans::span_surface;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PatternError {
    #[error("sentence `{0}`: parse required")]
    ParseRequired(String),
    #[error("pattern config: {0}")]
    Config(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{NoteEntry, Sentence};
    use crate::testutil::{doc, parsed, section, tokens};

    const AVAILABLE_ON_GITHUB: &str = "Our|our|PRON|2|nmod:poss code|code|NOUN|3|nsubj is|be|AUX|0|ROOT \
        publicly|publicly|ADV|5|advmod available|available|ADJ|3|acomp on|on|ADP|5|prep \
        Github|Github|PROPN|6|pobj .|.|PUNCT|3|punct";

    const USE_MNIST: &str = "We|we|PRON|2|nsubj use|use|VERB|0|ROOT MNIST|MNIST|PROPN|2|dobj \
        ,|,|PUNCT|3|punct which|which|PRON|6|nsubj contains|contain|VERB|3|relcl \
        70000|70000|NUM|8|nummod images|image|NOUN|6|dobj .|.|PUNCT|2|punct";

    fn rules(f: RuleFacet) -> RuleSet {
        PatternConfig::default().rule_set(f)
    }

    #[test]
    fn available_on_github_report() {
        let s = parsed("s1", AVAILABLE_ON_GITHUB);
        let d = doc("d", vec![section("sec", "Intro", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &rules(RuleFacet::SourceCode)).unwrap();
        assert_eq!(r.count(Slot::Subj), 0);
        assert_eq!(r.count(Slot::Root), 1);
        assert_eq!(r.count(Slot::Obj), 1);
        assert_eq!(r.count(Slot::AdjAdv), 2);
        assert_eq!((r.distinct_slots, r.total_occurrences), (3, 4));
        assert_eq!(r.tokens(Slot::AdjAdv), &[3, 4]);
    }

    #[test]
    fn release_the_implementation() {
        let s = parsed(
            "s1",
            "We|we|PRON|2|nsubj release|release|VERB|0|ROOT the|the|DET|4|det \
             implementation|implementation|NOUN|2|dobj .|.|PUNCT|2|punct",
        );
        let d = doc("d", vec![section("sec", "Intro", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &rules(RuleFacet::SourceCode)).unwrap();
        assert_eq!((r.distinct_slots, r.total_occurrences), (3, 3));
    }

    #[test]
    fn multiword_subject_entry() {
        let s = parsed(
            "s1",
            "The|the|DET|3|det source|source|NOUN|3|compound code|code|NOUN|4|nsubj \
             is|be|AUX|0|ROOT online|online|ADV|4|advmod .|.|PUNCT|4|punct",
        );
        let d = doc("d", vec![section("sec", "Intro", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &rules(RuleFacet::SourceCode)).unwrap();
        assert_eq!(r.count(Slot::Subj), 1);
        assert_eq!(r.tokens(Slot::Subj), &[1, 2]);
    }

    #[test]
    fn no_lexicon_lemma_gives_empty_report() {
        let s = parsed("s1", "Cats|cat|NOUN|2|nsubj sleep|sleep|VERB|0|ROOT .|.|PUNCT|2|punct");
        let d = doc("d", vec![section("sec", "Intro", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &rules(RuleFacet::Dataset)).unwrap();
        assert_eq!((r.distinct_slots, r.total_occurrences), (0, 0));
    }

    #[test]
    fn unparsed_sentence_is_an_error() {
        let s = Sentence::new("s9", "No parse here.");
        let d = doc("d", vec![], vec![]);
        let err = match_rules(&s, &d, &rules(RuleFacet::Dataset)).unwrap_err();
        assert!(err.to_string().contains("parse required"));
    }

    #[test]
    fn number_slots() {
        let s = parsed(
            "s1",
            "The|the|DET|2|det corpus|corpus|NOUN|3|nsubj contains|contain|VERB|0|ROOT \
             500|500|NUM|5|nummod documents|document|NOUN|3|dobj .|.|PUNCT|3|punct",
        );
        let d = doc("d", vec![section("sec", "Data", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &rules(RuleFacet::Dataset)).unwrap();
        assert_eq!(r.count(Slot::RootNumber), 1);
        assert_eq!(r.count(Slot::Root), 1);

        let s = parsed(
            "s2",
            "We|we|PRON|2|nsubj collect|collect|VERB|0|ROOT a|a|DET|4|det set|set|NOUN|2|dobj \
             consisting|consist|VERB|4|acl of|of|ADP|5|prep 300|300|NUM|8|nummod \
             clips|clip|NOUN|6|pobj .|.|PUNCT|2|punct",
        );
        let r = match_rules(&s, &d, &rules(RuleFacet::Dataset)).unwrap();
        assert_eq!(r.count(Slot::AdjClNumber), 1);
        assert_eq!(r.tokens(Slot::AdjClNumber), &[4]);
        assert_eq!(r.count(Slot::RootNumber), 0);
    }

    #[test]
    fn surface_slots() {
        let mut s = parsed("s1", USE_MNIST);
        s.footnote_marks = vec!["fn1".into()];
        s.citation_marks = vec![];
        let d = doc(
            "d",
            vec![section("sec", "Data", vec![s.clone()])],
            vec![NoteEntry::new("fn1", "http://yann.lecun.com/exdb/mnist")],
        );
        let r = match_rules(&s, &d, &rules(RuleFacet::Dataset)).unwrap();
        assert_eq!(r.count(Slot::HasFootnoteUrl), 1);
        assert_eq!(r.count(Slot::HasReference), 0);
        assert_eq!(r.count(Slot::GazetteerName), 1);
        assert_eq!(r.tokens(Slot::GazetteerName), &[2]);
        assert_eq!(r.count(Slot::RelClVerb), 1);
    }

    fn url_sentence(prefix: &str) -> Sentence {
        let spec = format!(
            "{prefix}Our|our|PRON|2|nmod:poss code|code|NOUN|3|nsubj is|be|AUX|0|ROOT \
             publicly|publicly|ADV|5|advmod available|available|ADJ|3|acomp at|at|ADP|5|prep \
             https://github.com/x/y|https://github.com/x/y|X|6|pobj .|.|PUNCT|3|punct"
        );
        parsed("s1", &spec)
    }

    #[test]
    fn source_code_candidate_qualifies() {
        let cfg = PatternConfig::default();
        let d = doc("d", vec![section("sec", "Intro", vec![url_sentence("")])], vec![]);
        let run = source_code_candidates(&d, &cfg.rule_set(RuleFacet::SourceCode), &cfg);
        assert_eq!(run.candidates.len(), 1);
        let c = &run.candidates[0];
        assert!(c.report.meets(2, 3));
        assert_eq!(c.trigger_distance, 0);
    }

    #[test]
    fn exclusion_lemma_blocks_candidate() {
        let cfg = PatternConfig::default();
        // heads of the merged tokens are shifted by the two prefix tokens
        let base = url_sentence("").tokens.unwrap();
        let mut toks = tokens("Figure|figure|NOUN|4|nsubj 3|3|NUM|1|nummod");
        for mut t in base {
            t.index += 2;
            if t.head >= 0 {
                t.head += 2;
            }
            toks.push(t);
        }
        toks[0].head = 4; // attach "Figure" under "is"
        let mut s = Sentence::new("s1", "Figure 3 Our code is publicly available at https://github.com/x/y.");
        s.tokens = Some(toks);
        let d = doc("d", vec![section("sec", "Intro", vec![s])], vec![]);
        let run = source_code_candidates(&d, &cfg.rule_set(RuleFacet::SourceCode), &cfg);
        assert!(run.candidates.is_empty());
    }

    #[test]
    fn root_only_sentence_fails() {
        let cfg = PatternConfig::default();
        let s = parsed(
            "s1",
            "This|this|PRON|2|nsubj is|be|AUX|0|ROOT https://x.org/a|https://x.org/a|X|2|attr .|.|PUNCT|2|punct",
        );
        let d = doc("d", vec![section("sec", "Intro", vec![s])], vec![]);
        let run = source_code_candidates(&d, &cfg.rule_set(RuleFacet::SourceCode), &cfg);
        assert!(run.candidates.is_empty());
    }

    #[test]
    fn unparsed_sentences_counted() {
        let cfg = PatternConfig::default();
        let d = doc("d", vec![section("sec", "Intro", vec![Sentence::new("s1", "x")])], vec![]);
        let run = source_code_candidates(&d, &cfg.rule_set(RuleFacet::SourceCode), &cfg);
        assert_eq!(run.skipped_unparsed, 1);
    }

    fn dataset_section() -> Vec<Sentence> {
        vec![
            parsed(
                "s1",
                "We|we|PRON|2|nsubj evaluate|evaluate|VERB|0|ROOT on|on|ADP|2|prep a|a|DET|6|det \
                 public|public|ADJ|6|amod dataset|dataset|NOUN|3|pobj .|.|PUNCT|2|punct",
            ),
            parsed(
                "s2",
                "The|the|DET|2|det results|result|NOUN|3|nsubj are|be|AUX|0|ROOT good|good|ADJ|3|acomp .|.|PUNCT|3|punct",
            ),
            parsed("s3", USE_MNIST),
        ]
    }

    #[test]
    fn dataset_lookahead_distance() {
        let cfg = PatternConfig::default();
        let d = doc("d", vec![section("sec", "Experiments", dataset_section())], vec![]);
        let run = dataset_candidates(&d, &cfg.rule_set(RuleFacet::Dataset), &cfg);
        let s3 = run.candidates.iter().find(|c| c.sentence_id == "s3").unwrap();
        assert_eq!(s3.trigger_distance, 2);
        assert!(run.candidates.iter().all(|c| c.sentence_id != "s2"));
    }

    #[test]
    fn no_material_no_candidates() {
        let cfg = PatternConfig::default();
        let d = doc("d", vec![section("sec", "Experiments", vec![parsed("s3", USE_MNIST)])], vec![]);
        assert!(dataset_candidates(&d, &cfg.rule_set(RuleFacet::Dataset), &cfg).candidates.is_empty());
    }

    #[test]
    fn trigger_at_section_end_truncates() {
        let cfg = PatternConfig::default();
        let mut first = dataset_section();
        first.truncate(1);
        let d = doc(
            "d",
            vec![section("a", "Experiments", first), section("b", "Results", vec![parsed("s3", USE_MNIST)])],
            vec![],
        );
        let run = dataset_candidates(&d, &cfg.rule_set(RuleFacet::Dataset), &cfg);
        assert!(run.candidates.iter().all(|c| c.sentence_id == "s1"));
    }

    #[test]
    fn mnist_span_scores_one() {
        let cfg = PatternConfig::default();
        let s = parsed("s3", USE_MNIST);
        let d = doc("d", vec![section("sec", "Data", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &cfg.rule_set(RuleFacet::Dataset)).unwrap();
        let spans = dataset_entity_candidates(&s, &r, &cfg);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].surface, "MNIST");
        assert_eq!(spans[0].score, 1.0);
    }

    #[test]
    fn span_governed_by_root_scores_half() {
        let cfg = PatternConfig::default();
        // "ImageNet" is an oblique of the root, one edge away
        let s = parsed(
            "s1",
            "We|we|PRON|2|nsubj evaluate|evaluate|VERB|0|ROOT on|on|ADP|4|case \
             ImageNet|ImageNet|PROPN|2|obl .|.|PUNCT|2|punct",
        );
        let d = doc("d", vec![section("sec", "Data", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &cfg.rule_set(RuleFacet::Dataset)).unwrap();
        let spans = dataset_entity_candidates(&s, &r, &cfg);
        assert_eq!(spans[0].surface, "ImageNet");
        assert_eq!(spans[0].score, 0.5);
    }

    #[test]
    fn multi_token_name_and_trailing_material_trimmed() {
        let cfg = PatternConfig::default();
        let s = parsed(
            "s1",
            "We|we|PRON|2|nsubj use|use|VERB|0|ROOT the|the|DET|6|det Penn|Penn|PROPN|5|compound \
             Treebank|Treebank|PROPN|6|compound corpus|corpus|NOUN|2|dobj .|.|PUNCT|2|punct",
        );
        let d = doc("d", vec![section("sec", "Data", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &cfg.rule_set(RuleFacet::Dataset)).unwrap();
        let spans = dataset_entity_candidates(&s, &r, &cfg);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].surface, "Penn Treebank");
        // head "Treebank" -> "corpus" (obj of matched root) is one edge
        assert_eq!(spans[0].score, 0.5);
    }

    #[test]
    fn sentence_initial_common_noun_is_not_a_name() {
        let cfg = PatternConfig::default();
        let s = parsed(
            "s1",
            "Experiments|experiment|NOUN|2|nsubj use|use|VERB|0|ROOT SVHN|SVHN|PROPN|2|dobj .|.|PUNCT|2|punct",
        );
        let d = doc("d", vec![section("sec", "Data", vec![s.clone()])], vec![]);
        let r = match_rules(&s, &d, &cfg.rule_set(RuleFacet::Dataset)).unwrap();
        let spans = dataset_entity_candidates(&s, &r, &cfg);
        assert_eq!(spans.iter().map(|s| s.surface.as_str()).collect::<Vec<_>>(), vec!["SVHN"]);
    }

    #[test]
    fn sdp_small_cases() {
        let t = tokens("a|a|X|2|dep b|b|X|0|root c|c|X|2|dep d|d|X|3|dep");
        assert_eq!(shortest_dependency_path(&t, 1, 1), 0);
        assert_eq!(shortest_dependency_path(&t, 0, 1), 1);
        assert_eq!(shortest_dependency_path(&t, 0, 2), 2);
        assert_eq!(shortest_dependency_path(&t, 0, 3), 3);
    }
}
