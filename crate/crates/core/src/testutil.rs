//! Hand-parse helpers for unit tests.

use crate::corpus::{DocumentRecord, NoteEntry, Section, SectionKind, Sentence, Token};

/// Builds tokens from `surface|lemma|UPOS|head|deprel` items, heads 1-based
/// with 0 for the root.
pub fn tokens(spec: &str) -> Vec<Token> {
    let items: Vec<&str> = spec.split_whitespace().collect();
    let mut toks: Vec<Token> = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let f: Vec<&str> = item.split('|').collect();
            assert_eq!(f.len(), 5, "bad token spec `{item}`");
            Token {
                index: i,
                surface: f[0].to_string(),
                lemma: f[1].to_string(),
                upos: f[2].to_string(),
                head: f[3].parse::<i64>().unwrap() - 1,
                deprel: f[4].to_string(),
                space_after: true,
            }
        })
        .collect();
    for i in 0..toks.len().saturating_sub(1) {
        let next = &toks[i + 1].surface;
        if matches!(next.as_str(), "." | "," | ";" | ":" | ")" | "!" | "?") || toks[i].surface == "(" {
            toks[i].space_after = false;
        }
    }
    toks
}

pub fn parsed(id: &str, spec: &str) -> Sentence {
    let toks = tokens(spec);
    let mut text = String::new();
    for t in &toks {
        text.push_str(&t.surface);
        if t.space_after {
            text.push(' ');
        }
    }
    let mut s = Sentence::new(id, text.trim_end());
    s.tokens = Some(toks);
    s
}

pub fn section(id: &str, header: &str, sentences: Vec<Sentence>) -> Section {
    Section { section_id: id.into(), header: header.into(), kind: crate::corpus::classify_section(header), sentences }
}

pub fn doc(doc_id: &str, sections: Vec<Section>, footnotes: Vec<NoteEntry>) -> DocumentRecord {
    DocumentRecord {
        doc_id: doc_id.into(),
        title: "Test".into(),
        year: 2019,
        category_tags: vec!["cs.LG".into()],
        abstract_section: Section {
            section_id: "abs".into(),
            header: "Abstract".into(),
            kind: SectionKind::Abstract,
            sentences: vec![],
        },
        sections,
        footnotes,
        references: vec![],
    }
}
