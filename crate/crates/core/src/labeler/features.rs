use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{detect_urls, Token};

/// Version tag of the token feature templates below. Bump whenever a
/// template changes so stale models are rejected.
pub const CRF_TEMPLATE_VERSION: &str = "crf-sparse-v1";

/// Sparse token featurizer standing in for a contextual encoder.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Featurizer {
    /// Named term lists (gazetteers, seed lexicons); membership becomes a
    /// `lex=<name>` feature.
    pub lexicons: BTreeMap<String, BTreeSet<String>>,
}

fn lemma_of(t: &Token) -> String {
    if t.lemma.is_empty() || t.lemma == "_" {
        t.surface.to_lowercase()
    } else {
        t.lemma.to_lowercase()
    }
}

/// Case/digit shape: `GPU` -> `XXX`, `P100` -> `Xddd`.
pub fn word_shape(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_uppercase() {
                'X'
            } else if c.is_lowercase() {
                'x'
            } else if c.is_numeric() {
                'd'
            } else {
                c
            }
        })
        .collect()
}

fn short_shape(s: &str) -> String {
    let mut out = String::new();
    for c in word_shape(s).chars() {
        if !out.ends_with(c) {
            out.push(c);
        }
    }
    out
}

impl Featurizer {
    pub fn version(&self) -> &'static str {
        CRF_TEMPLATE_VERSION
    }

    pub fn with_lexicon<I, S>(mut self, name: &str, terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.lexicons.entry(name.to_string()).or_default().extend(terms.into_iter().map(|t| t.as_ref().to_lowercase()));
        self
    }

    /// Feature strings for the token at `position`, sorted and deduplicated.
    pub fn features(&self, tokens: &[Token], position: usize) -> Vec<String> {
        let mut f = BTreeSet::new();
        let tok = &tokens[position];
        f.insert("bias".to_string());
        for offset in -2i64..=2 {
            let Some(i) = usize::try_from(position as i64 + offset).ok().filter(|&i| i < tokens.len()) else {
                continue;
            };
            let t = &tokens[i];
            f.insert(format!("w[{offset}]={}", t.surface.to_lowercase()));
            f.insert(format!("l[{offset}]={}", lemma_of(t)));
            f.insert(format!("p[{offset}]={}", t.upos));
        }
        if position == 0 {
            f.insert("BOS".to_string());
        }
        if position + 1 == tokens.len() {
            f.insert("EOS".to_string());
        }
        let surface = &tok.surface;
        f.insert(format!("shape={}", word_shape(surface)));
        f.insert(format!("sshape={}", short_shape(surface)));
        let lower: Vec<char> = surface.to_lowercase().chars().collect();
        for k in 1..=3 {
            if lower.len() >= k {
                f.insert(format!("pre{k}={}", lower[..k].iter().collect::<String>()));
                f.insert(format!("suf{k}={}", lower[lower.len() - k..].iter().collect::<String>()));
            }
        }
        if surface.chars().next().is_some_and(char::is_uppercase) {
            f.insert("is_cap".to_string());
        }
        if surface.chars().any(|c| c.is_ascii_digit()) {
            f.insert("has_digit".to_string());
        }
        if surface.chars().next_back().is_some_and(|c| c.is_ascii_digit()) {
            f.insert("ends_digit".to_string());
        }
        if !detect_urls(surface).is_empty() || surface.starts_with("www.") {
            f.insert("is_url".to_string());
        }
        let lower_surface = surface.to_lowercase();
        let lemma = lemma_of(tok);
        for (name, terms) in &self.lexicons {
            if terms.contains(&lower_surface) || terms.contains(&lemma) {
                f.insert(format!("lex={name}"));
            }
        }
        f.into_iter().collect()
    }
}
