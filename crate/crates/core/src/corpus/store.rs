use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{attach_parses, document_to_json, load_corpus, write_conllu, CorpusError, DocumentRecord, FileFailure};

/// Counts written next to a normalized corpus store.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub documents: usize,
    pub sentences: usize,
    pub parsed_sentences: usize,
    pub failures: Vec<FileFailure>,
    pub warnings: Vec<String>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.to_path_buf(), source }
}

fn parse_file_for(dir: &Path, doc_id: &str) -> PathBuf {
    dir.join(format!("{doc_id}.conllu"))
}

/// Documents, attach warnings, and parse files that failed.
pub type AttachedCorpus = (Vec<DocumentRecord>, Vec<String>, Vec<FileFailure>);

/// Attaches `<dir>/<doc_id>.conllu` to each document that has one.
/// Returns warnings from the attach step and files that failed to parse.
pub fn attach_parse_dir(docs: Vec<DocumentRecord>, dir: &Path) -> Result<AttachedCorpus, CorpusError> {
    let mut out = Vec::with_capacity(docs.len());
    let mut warnings = Vec::new();
    let mut failures = Vec::new();
    for doc in docs {
        let path = parse_file_for(dir, &doc.doc_id);
        if !path.exists() {
            out.push(doc);
            continue;
        }
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        match attach_parses(&doc, &text) {
            Ok((parsed, report)) => {
                warnings.extend(report.warnings.into_iter().map(|w| format!("{}: {w}", path.display())));
                out.push(parsed);
            }
            Err(e) => {
                failures.push(FileFailure { path: path.clone(), message: e.to_string() });
                out.push(doc);
            }
        }
    }
    Ok((out, warnings, failures))
}

/// Writes a normalized store: `docs/<doc_id>.json`, `parses/<doc_id>.conllu`
/// and `manifest.json`.
pub fn write_store(dir: &Path, docs: &[DocumentRecord], mut manifest: Manifest) -> Result<Manifest, CorpusError> {
    let docs_dir = dir.join("docs");
    let parses_dir = dir.join("parses");
    fs::create_dir_all(&docs_dir).map_err(io_err(&docs_dir))?;
    fs::create_dir_all(&parses_dir).map_err(io_err(&parses_dir))?;
    for doc in docs {
        let path = docs_dir.join(format!("{}.json", doc.doc_id));
        fs::write(&path, document_to_json(doc) + "\n").map_err(io_err(&path))?;
        let conllu = write_conllu(doc);
        if !conllu.is_empty() {
            let path = parse_file_for(&parses_dir, &doc.doc_id);
            fs::write(&path, conllu).map_err(io_err(&path))?;
        }
    }
    manifest.documents = docs.len();
    manifest.sentences = docs.iter().map(|d| d.sentence_count()).sum();
    manifest.parsed_sentences = docs.iter().map(|d| d.parsed_sentence_count()).sum();
    let path = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(io_err(&path))?;
    Ok(manifest)
}

/// Loads a store written by [`write_store`], parses included.
pub fn load_store(dir: &Path) -> Result<Vec<DocumentRecord>, CorpusError> {
    let docs = load_corpus(&dir.join("docs"))?;
    let parses = dir.join("parses");
    if !parses.is_dir() {
        return Ok(docs);
    }
    let (docs, _, mut failures) = attach_parse_dir(docs, &parses)?;
    if let Some(f) = failures.pop() {
        return Err(CorpusError::Schema { path: f.path, message: f.message });
    }
    Ok(docs)
}
