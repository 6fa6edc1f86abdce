//! Structured document model and corpus loading.
//!
//! Documents arrive one per JSON file. Dependency parses are attached
//! separately from CoNLL-U sidecar files keyed by `# sent_id`.

mod conllu;
mod section;
mod store;
mod text;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use conllu::{attach_parses, parse_conllu, write_conllu, AttachReport, ParsedBlock};
pub use section::{classify_section, SectionKeywords, SectionKind};
pub use store::{attach_parse_dir, load_store, write_store, Manifest};
pub use text::{detect_urls, normalize_text};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: schema violation: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("document `{doc_id}`: {message}")]
    Invalid { doc_id: String, message: String },
    #[error("duplicate doc_id `{doc_id}` in {first} and {second}")]
    DuplicateDocId { doc_id: String, first: PathBuf, second: PathBuf },
    #[error("CoNLL-U line {line}: {message}")]
    Conllu { line: usize, message: String },
    #[error("CoNLL-U sentence `{sent_id}` (line {line}): not a tree: {message}")]
    NotATree { sent_id: String, line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    /// 0-based position in the sentence.
    pub index: usize,
    pub surface: String,
    pub lemma: String,
    pub upos: String,
    /// Index of the governing token, `-1` for the root.
    pub head: i64,
    pub deprel: String,
    #[serde(default = "default_true")]
    pub space_after: bool,
}

fn default_true() -> bool {
    true
}

impl Token {
    pub fn head_index(&self) -> Option<usize> {
        usize::try_from(self.head).ok()
    }

    pub fn is_root(&self) -> bool {
        self.head < 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub sentence_id: String,
    pub text: String,
    pub tokens: Option<Vec<Token>>,
    pub footnote_marks: Vec<String>,
    pub citation_marks: Vec<String>,
    pub urls: Vec<String>,
}

impl Sentence {
    pub fn new(sentence_id: impl Into<String>, text: &str) -> Self {
        let text = normalize_text(text);
        let urls = detect_urls(&text);
        Sentence {
            sentence_id: sentence_id.into(),
            text,
            tokens: None,
            footnote_marks: Vec::new(),
            citation_marks: Vec::new(),
            urls,
        }
    }

    pub fn is_parsed(&self) -> bool {
        self.tokens.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub section_id: String,
    pub header: String,
    pub kind: SectionKind,
    pub sentences: Vec<Sentence>,
}

/// A footnote or a bibliography entry.
#[derive(Debug, Clone, PartialEq)]
pub struct NoteEntry {
    pub id: String,
    pub text: String,
    pub urls: Vec<String>,
}

pub type FootnoteEntry = NoteEntry;
pub type ReferenceEntry = NoteEntry;

impl NoteEntry {
    pub fn new(id: impl Into<String>, text: &str) -> Self {
        let text = normalize_text(text);
        let urls = detect_urls(&text);
        NoteEntry { id: id.into(), text, urls }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentRecord {
    pub doc_id: String,
    pub title: String,
    pub year: i32,
    pub category_tags: Vec<String>,
    pub abstract_section: Section,
    pub sections: Vec<Section>,
    pub footnotes: Vec<FootnoteEntry>,
    pub references: Vec<ReferenceEntry>,
}

impl DocumentRecord {
    /// The abstract followed by body sections, in reading order.
    pub fn all_sections(&self) -> impl Iterator<Item = &Section> {
        std::iter::once(&self.abstract_section).chain(self.sections.iter())
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.all_sections().flat_map(|s| s.sentences.iter())
    }

    pub fn sentence(&self, sentence_id: &str) -> Option<&Sentence> {
        self.sentences().find(|s| s.sentence_id == sentence_id)
    }

    pub fn section(&self, section_id: &str) -> Option<&Section> {
        self.all_sections().find(|s| s.section_id == section_id)
    }

    pub fn footnote(&self, id: &str) -> Option<&FootnoteEntry> {
        self.footnotes.iter().find(|f| f.id == id)
    }

    pub fn reference(&self, id: &str) -> Option<&ReferenceEntry> {
        self.references.iter().find(|r| r.id == id)
    }

    /// URLs attributable to a sentence: its own text first, then the
    /// footnotes it marks, then the references it cites. Duplicates are
    /// dropped keeping the first occurrence.
    pub fn linked_urls(&self, sentence: &Sentence) -> Vec<String> {
        let mut seen = HashSet::new();
        let notes = sentence
            .footnote_marks
            .iter()
            .filter_map(|id| self.footnote(id))
            .chain(sentence.citation_marks.iter().filter_map(|id| self.reference(id)));
        sentence
            .urls
            .iter()
            .chain(notes.flat_map(|n| n.urls.iter()))
            .filter(|u| seen.insert(u.as_str()))
            .cloned()
            .collect()
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences().count()
    }

    pub fn parsed_sentence_count(&self) -> usize {
        self.sentences().filter(|s| s.is_parsed()).count()
    }

    /// Checks the document-level invariants.
    pub fn validate(&self) -> Result<(), CorpusError> {
        let invalid = |message: String| CorpusError::Invalid { doc_id: self.doc_id.clone(), message };
        if self.doc_id.trim().is_empty() {
            return Err(CorpusError::Invalid { doc_id: String::new(), message: "doc_id must be non-empty".into() });
        }
        let mut section_ids = HashSet::new();
        let mut sentence_ids = HashSet::new();
        for section in self.all_sections() {
            if !section_ids.insert(section.section_id.as_str()) {
                return Err(invalid(format!("duplicate section_id `{}`", section.section_id)));
            }
            for sentence in &section.sentences {
                if !sentence_ids.insert(sentence.sentence_id.as_str()) {
                    return Err(invalid(format!("duplicate sentence_id `{}`", sentence.sentence_id)));
                }
                for mark in &sentence.footnote_marks {
                    if self.footnote(mark).is_none() {
                        return Err(invalid(format!(
                            "sentence `{}` marks unknown footnote `{mark}`",
                            sentence.sentence_id
                        )));
                    }
                }
                for mark in &sentence.citation_marks {
                    if self.reference(mark).is_none() {
                        return Err(invalid(format!(
                            "sentence `{}` cites unknown reference `{mark}`",
                            sentence.sentence_id
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

// Wire format. Kept separate from the domain types because kinds and URLs
// are derived on load and never stored.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocumentJson {
    doc_id: String,
    title: String,
    year: i32,
    category_tags: Vec<String>,
    #[serde(rename = "abstract")]
    abstract_section: SectionJson,
    sections: Vec<SectionJson>,
    footnotes: Vec<NoteJson>,
    references: Vec<NoteJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionJson {
    section_id: String,
    header: String,
    sentences: Vec<SentenceJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SentenceJson {
    sentence_id: String,
    text: String,
    footnote_marks: Vec<String>,
    citation_marks: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NoteJson {
    id: String,
    text: String,
}

impl From<SectionJson> for Section {
    fn from(raw: SectionJson) -> Self {
        let header = normalize_text(&raw.header);
        Section {
            section_id: raw.section_id,
            kind: classify_section(&header),
            header,
            sentences: raw
                .sentences
                .into_iter()
                .map(|s| Sentence {
                    footnote_marks: s.footnote_marks,
                    citation_marks: s.citation_marks,
                    ..Sentence::new(s.sentence_id, &s.text)
                })
                .collect(),
        }
    }
}

impl From<&Section> for SectionJson {
    fn from(s: &Section) -> Self {
        SectionJson {
            section_id: s.section_id.clone(),
            header: s.header.clone(),
            sentences: s
                .sentences
                .iter()
                .map(|s| SentenceJson {
                    sentence_id: s.sentence_id.clone(),
                    text: s.text.clone(),
                    footnote_marks: s.footnote_marks.clone(),
                    citation_marks: s.citation_marks.clone(),
                })
                .collect(),
        }
    }
}

impl From<DocumentJson> for DocumentRecord {
    fn from(raw: DocumentJson) -> Self {
        let note = |n: NoteJson| NoteEntry::new(n.id, &n.text);
        DocumentRecord {
            doc_id: raw.doc_id,
            title: normalize_text(&raw.title),
            year: raw.year,
            category_tags: raw.category_tags,
            abstract_section: raw.abstract_section.into(),
            sections: raw.sections.into_iter().map(Section::from).collect(),
            footnotes: raw.footnotes.into_iter().map(note).collect(),
            references: raw.references.into_iter().map(note).collect(),
        }
    }
}

impl From<&DocumentRecord> for DocumentJson {
    fn from(d: &DocumentRecord) -> Self {
        let note = |n: &NoteEntry| NoteJson { id: n.id.clone(), text: n.text.clone() };
        DocumentJson {
            doc_id: d.doc_id.clone(),
            title: d.title.clone(),
            year: d.year,
            category_tags: d.category_tags.clone(),
            abstract_section: (&d.abstract_section).into(),
            sections: d.sections.iter().map(SectionJson::from).collect(),
            footnotes: d.footnotes.iter().map(note).collect(),
            references: d.references.iter().map(note).collect(),
        }
    }
}

/// Parses one document from its JSON text. `origin` is only used in
/// diagnostics.
pub fn parse_document(json: &str, origin: &Path) -> Result<DocumentRecord, CorpusError> {
    let raw: DocumentJson = serde_json::from_str(json)
        .map_err(|e| CorpusError::Schema { path: origin.to_path_buf(), message: e.to_string() })?;
    let doc = DocumentRecord::from(raw);
    doc.validate()?;
    Ok(doc)
}

/// Serializes a document to the canonical JSON layout. Parses are not part
/// of the document file; see [`write_conllu`].
pub fn document_to_json(doc: &DocumentRecord) -> String {
    serde_json::to_string_pretty(&DocumentJson::from(doc)).expect("document serializes")
}

pub fn read_document(path: &Path) -> Result<DocumentRecord, CorpusError> {
    let json = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    parse_document(&json, path)
}

/// A file that failed to load, kept by [`load_corpus_lenient`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileFailure {
    pub path: PathBuf,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct LoadOutcome {
    pub documents: Vec<DocumentRecord>,
    pub failures: Vec<FileFailure>,
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    let io = |source| CorpusError::Io { path: dir.to_path_buf(), source };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn collect_unique(loaded: Vec<(PathBuf, DocumentRecord)>) -> Result<Vec<DocumentRecord>, CorpusError> {
    let mut by_id: BTreeMap<String, (PathBuf, DocumentRecord)> = BTreeMap::new();
    for (path, doc) in loaded {
        if let Some((first, _)) = by_id.get(&doc.doc_id) {
            return Err(CorpusError::DuplicateDocId { doc_id: doc.doc_id.clone(), first: first.clone(), second: path });
        }
        by_id.insert(doc.doc_id.clone(), (path, doc));
    }
    Ok(by_id.into_values().map(|(_, d)| d).collect())
}

/// Loads every `*.json` document in `dir`, sorted by `doc_id`. The first
/// invalid file aborts the load.
pub fn load_corpus(dir: &Path) -> Result<Vec<DocumentRecord>, CorpusError> {
    let files = json_files(dir)?;
    let loaded = files.into_par_iter().map(|p| read_document(&p).map(|d| (p, d))).collect::<Result<Vec<_>, _>>()?;
    collect_unique(loaded)
}

/// Like [`load_corpus`] but records per-file failures instead of aborting.
/// Duplicate ids are still a corpus-level error.
pub fn load_corpus_lenient(dir: &Path) -> Result<LoadOutcome, CorpusError> {
    let files = json_files(dir)?;
    let results: Vec<_> = files
        .into_par_iter()
        .map(|p| {
            let r = read_document(&p);
            (p, r)
        })
        .collect();
    let mut loaded = Vec::new();
    let mut failures = Vec::new();
    for (path, result) in results {
        match result {
            Ok(doc) => loaded.push((path, doc)),
            Err(e) => failures.push(FileFailure { path, message: e.to_string() }),
        }
    }
    Ok(LoadOutcome { documents: collect_unique(loaded)?, failures })
}
