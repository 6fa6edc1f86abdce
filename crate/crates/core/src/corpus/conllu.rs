use std::collections::HashMap;
use std::fmt::Write as _;

use super::{normalize_text, CorpusError, DocumentRecord, Token};

/// One sentence block read from CoNLL-U.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedBlock {
    pub sent_id: Option<String>,
    pub tokens: Vec<Token>,
    /// 1-based line of the first token.
    pub line: usize,
}

/// Outcome of [`attach_parses`] besides the updated document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AttachReport {
    pub attached: usize,
    pub warnings: Vec<String>,
}

fn malformed(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Conllu { line, message: message.into() }
}

/// Parses CoNLL-U text. Multiword-token ranges (`1-2`) and empty nodes
/// (`1.1`) are skipped; every block must form a single-rooted tree.
pub fn parse_conllu(text: &str) -> Result<Vec<ParsedBlock>, CorpusError> {
    let mut blocks = Vec::new();
    let mut sent_id: Option<String> = None;
    let mut tokens: Vec<Token> = Vec::new();
    let mut raw_heads: Vec<(usize, usize)> = Vec::new();
    let mut first_line = 0;

    let mut flush = |sent_id: &mut Option<String>,
                     tokens: &mut Vec<Token>,
                     raw_heads: &mut Vec<(usize, usize)>,
                     first_line: usize|
     -> Result<(), CorpusError> {
        if tokens.is_empty() {
            *sent_id = None;
            return Ok(());
        }
        let n = tokens.len();
        for (i, &(head, line)) in raw_heads.iter().enumerate() {
            if head > n {
                return Err(malformed(line, format!("head {head} out of range 0..={n}")));
            }
            tokens[i].head = head as i64 - 1;
        }
        let mut toks = std::mem::take(tokens);
        raw_heads.clear();
        let id = sent_id.take();
        if let Err(message) = check_tree(&toks) {
            return Err(CorpusError::NotATree { sent_id: id.unwrap_or_default(), line: first_line, message });
        }
        for (i, t) in toks.iter_mut().enumerate() {
            t.index = i;
        }
        blocks.push(ParsedBlock { sent_id: id, tokens: toks, line: first_line });
        Ok(())
    };

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            flush(&mut sent_id, &mut tokens, &mut raw_heads, first_line)?;
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    sent_id = Some(value.trim().to_string());
                }
            }
            continue;
        }
        let mut cols: Vec<&str> = trimmed.split('\t').collect();
        if cols.len() != 10 {
            cols = trimmed.split_whitespace().collect();
        }
        if cols.len() != 10 {
            return Err(malformed(lineno, format!("expected 10 columns, found {}", cols.len())));
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let id: usize = id.parse().map_err(|_| malformed(lineno, format!("invalid token id `{id}`")))?;
        if id != tokens.len() + 1 {
            return Err(malformed(lineno, format!("token id {id} out of sequence (expected {})", tokens.len() + 1)));
        }
        if tokens.is_empty() {
            first_line = lineno;
        }
        let head: usize = cols[6].parse().map_err(|_| malformed(lineno, format!("invalid head `{}`", cols[6])))?;
        let space_after = !cols[9].split('|').any(|m| m == "SpaceAfter=No");
        raw_heads.push((head, lineno));
        tokens.push(Token {
            index: id - 1,
            surface: cols[1].to_string(),
            lemma: cols[2].to_string(),
            upos: cols[3].to_string(),
            head: -1,
            deprel: cols[7].to_string(),
            space_after,
        });
    }
    flush(&mut sent_id, &mut tokens, &mut raw_heads, first_line)?;
    Ok(blocks)
}

/// Exactly one root and every token reaches it.
pub(crate) fn check_tree(tokens: &[Token]) -> Result<(), String> {
    let roots = tokens.iter().filter(|t| t.is_root()).count();
    if roots != 1 {
        return Err(format!("expected exactly one root, found {roots}"));
    }
    for start in 0..tokens.len() {
        let mut cur = start;
        let mut steps = 0;
        while let Some(h) = tokens[cur].head_index() {
            if h >= tokens.len() {
                return Err(format!("token {start} has head {h} out of range"));
            }
            cur = h;
            steps += 1;
            if steps > tokens.len() {
                return Err(format!("cycle through token {start}"));
            }
        }
    }
    Ok(())
}

/// Rebuilds sentence text from token surfaces and spacing flags.
pub(crate) fn reconstruct_text(tokens: &[Token]) -> String {
    let mut out = String::new();
    for t in tokens {
        out.push_str(&t.surface);
        if t.space_after {
            out.push(' ');
        }
    }
    normalize_text(&out)
}

/// Attaches parses to the sentences whose ids match `# sent_id` comments.
/// Blocks naming an unknown sentence, or whose tokens do not reproduce the
/// sentence text, are skipped with a warning.
pub fn attach_parses(doc: &DocumentRecord, conllu_text: &str) -> Result<(DocumentRecord, AttachReport), CorpusError> {
    let blocks = parse_conllu(conllu_text)?;
    let mut doc = doc.clone();
    let mut report = AttachReport::default();
    let mut by_id: HashMap<String, Vec<Token>> = HashMap::new();
    for block in blocks {
        let Some(id) = block.sent_id else {
            report.warnings.push(format!("block at line {} has no sent_id; skipped", block.line));
            continue;
        };
        by_id.insert(id, block.tokens);
    }
    let mut matched = Vec::new();
    for section in std::iter::once(&mut doc.abstract_section).chain(doc.sections.iter_mut()) {
        for sentence in &mut section.sentences {
            let Some(tokens) = by_id.get(&sentence.sentence_id) else {
                continue;
            };
            matched.push(sentence.sentence_id.clone());
            let rebuilt = reconstruct_text(tokens);
            if rebuilt != sentence.text {
                report.warnings.push(format!(
                    "sent_id `{}`: tokens give `{rebuilt}` but text is `{}`; skipped",
                    sentence.sentence_id, sentence.text
                ));
                continue;
            }
            sentence.tokens = Some(tokens.clone());
            report.attached += 1;
        }
    }
    let mut unknown: Vec<_> = by_id.keys().filter(|id| !matched.contains(id)).collect();
    unknown.sort();
    for id in unknown {
        report.warnings.push(format!("sent_id `{id}` not found in document `{}`; skipped", doc.doc_id));
    }
    for w in &report.warnings {
        log::warn!("{w}");
    }
    Ok((doc, report))
}

/// Writes every parsed sentence of the document as CoNLL-U.
pub fn write_conllu(doc: &DocumentRecord) -> String {
    let mut out = String::new();
    for sentence in doc.sentences() {
        let Some(tokens) = &sentence.tokens else {
            continue;
        };
        let _ = writeln!(out, "# sent_id = {}", sentence.sentence_id);
        let _ = writeln!(out, "# text = {}", sentence.text);
        for t in tokens {
            let misc = if t.space_after { "_" } else { "SpaceAfter=No" };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t{}",
                t.index + 1,
                t.surface,
                t.lemma,
                t.upos,
                t.head + 1,
                t.deprel,
                misc
            );
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{NoteEntry, Section, SectionKind, Sentence};

    fn doc() -> DocumentRecord {
        DocumentRecord {
            doc_id: "d".into(),
            title: "t".into(),
            year: 2020,
            category_tags: vec![],
            abstract_section: Section {
                section_id: "abs".into(),
                header: "Abstract".into(),
                kind: SectionKind::Abstract,
                sentences: vec![Sentence::new("s1", "We release code.")],
            },
            sections: vec![],
            footnotes: vec![NoteEntry::new("f", "x")],
            references: vec![],
        }
    }

    const S1: &str = "# sent_id = s1\n\
1\tWe\twe\tPRON\t_\t_\t2\tnsubj\t_\t_\n\
2\trelease\trelease\tVERB\t_\t_\t0\troot\t_\t_\n\
3\tcode\tcode\tNOUN\t_\t_\t2\tobj\t_\tSpaceAfter=No\n\
4\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n";

    #[test]
    fn attaches_three_word_parse() {
        let (d, report) = attach_parses(&doc(), S1).unwrap();
        let toks = d.sentence("s1").unwrap().tokens.as_ref().unwrap();
        assert_eq!(toks.len(), 4);
        assert_eq!(toks.iter().filter(|t| t.head == -1).count(), 1);
        assert_eq!(report.attached, 1);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn cycle_is_not_a_tree() {
        let text = "# sent_id = s1\n\
1\tA\ta\tX\t_\t_\t2\tdep\t_\t_\n\
2\tB\tb\tX\t_\t_\t1\tdep\t_\t_\n\
3\tC\tc\tX\t_\t_\t0\troot\t_\t_\n";
        let err = parse_conllu(text).unwrap_err();
        assert!(err.to_string().contains("not a tree"), "{err}");
    }

    #[test]
    fn malformed_line_reports_number() {
        let text = "# sent_id = s1\n1\tA\ta\tX\t_\t_\t0\troot\t_\t_\n2\tB\tb\n";
        match parse_conllu(text).unwrap_err() {
            CorpusError::Conllu { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_sent_id_skipped_with_warning() {
        let text = format!("{S1}\n# sent_id = s99\n1\tX\tx\tX\t_\t_\t0\troot\t_\t_\n");
        let (d, report) = attach_parses(&doc(), &text).unwrap();
        assert!(d.sentence("s1").unwrap().is_parsed());
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].contains("s99"));
    }

    #[test]
    fn idempotent_and_round_trips() {
        let (once, _) = attach_parses(&doc(), S1).unwrap();
        let (twice, _) = attach_parses(&once, S1).unwrap();
        assert_eq!(once, twice);
        let (again, _) = attach_parses(&doc(), &write_conllu(&once)).unwrap();
        assert_eq!(once, again);
    }

    #[test]
    fn text_mismatch_skipped() {
        let text = S1.replace("\tcode\tcode", "\tdata\tdata");
        let (d, report) = attach_parses(&doc(), &text).unwrap();
        assert!(!d.sentence("s1").unwrap().is_parsed());
        assert_eq!(report.attached, 0);
        assert_eq!(report.warnings.len(), 1);
    }
}
