//! Discovers `.java` files under a root and parses them in parallel.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::lexer::{count_line_breaks, tokenize, LexError};
use crate::parser::{parse_compilation_unit, ClassDecl, ParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    /// Corpus-relative path with `/` separators.
    pub path: String,
    pub file_id: usize,
    pub package: Option<String>,
    pub imports: Vec<String>,
    pub classes: Vec<ClassDecl>,
    pub line_count: u32,
}

/// Non-fatal problems found while reading a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    Lex { path: String, error: LexError },
    Parse { path: String, error: ParseError },
    Io { path: String, message: String },
    NoSourceFiles,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Lex { path, error } => write!(f, "{path}: {error}"),
            Diagnostic::Parse { path, error } => write!(f, "{path}: {error}"),
            Diagnostic::Io { path, message } => write!(f, "{path}: {message}"),
            Diagnostic::NoSourceFiles => write!(f, "warning: no .java files found"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParsedCorpus {
    /// Successfully parsed files in byte order of their relative paths.
    pub files: Vec<SourceFile>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParsedCorpus {
    pub fn classes(&self) -> impl Iterator<Item = &ClassDecl> {
        self.files.iter().flat_map(|f| f.classes.iter())
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("source root not found: {}", .0.display())]
    RootNotFound(PathBuf),
    #[error("cannot read source root {}: {source}", path.display())]
    Walk { path: PathBuf, source: walkdir::Error },
}

/// Parses every `.java` file under `root`, recursively.
///
/// Files that fail to tokenize or parse are excluded and reported in
/// [`ParsedCorpus::diagnostics`]; an empty corpus carries
/// [`Diagnostic::NoSourceFiles`].
pub fn parse_corpus(root: &Path) -> Result<ParsedCorpus, CorpusError> {
    if !root.is_dir() {
        return Err(CorpusError::RootNotFound(root.to_path_buf()));
    }
    let mut paths = Vec::new();
    for entry in walkdir::WalkDir::new(root).follow_links(true) {
        let entry = entry.map_err(|source| CorpusError::Walk {
            path: root.to_path_buf(),
            source,
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|e| e == "java") {
            let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
            let rel = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            paths.push((rel, entry.path().to_path_buf()));
        }
    }
    paths.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));

    let loaded: Vec<(String, Result<Vec<u8>, String>)> = paths
        .into_par_iter()
        .map(|(rel, full)| {
            let bytes = std::fs::read(&full).map_err(|e| e.to_string());
            (rel, bytes)
        })
        .collect();

    let mut io_errors = Vec::new();
    let mut sources = Vec::new();
    for (rel, bytes) in loaded {
        match bytes {
            Ok(b) => sources.push((rel, b)),
            Err(message) => io_errors.push(Diagnostic::Io { path: rel, message }),
        }
    }
    let mut corpus = parse_sources(sources);
    corpus.diagnostics.splice(0..0, io_errors);
    Ok(corpus)
}

/// Parses in-memory sources keyed by corpus-relative path.
///
/// Input order does not matter; files are sorted by path bytes first.
pub fn parse_sources(mut sources: Vec<(String, Vec<u8>)>) -> ParsedCorpus {
    sources.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    let results: Vec<Result<SourceFile, Diagnostic>> = sources
        .par_iter()
        .enumerate()
        .map(|(file_id, (path, bytes))| parse_file(path, bytes, file_id))
        .collect();

    let mut corpus = ParsedCorpus::default();
    for r in results {
        match r {
            Ok(file) => corpus.files.push(file),
            Err(d) => corpus.diagnostics.push(d),
        }
    }
    if sources.is_empty() {
        corpus.diagnostics.push(Diagnostic::NoSourceFiles);
    }
    corpus
}

fn parse_file(path: &str, bytes: &[u8], file_id: usize) -> Result<SourceFile, Diagnostic> {
    let tokens = tokenize(bytes, file_id).map_err(|error| Diagnostic::Lex {
        path: path.to_owned(),
        error,
    })?;
    let unit = parse_compilation_unit(&tokens).map_err(|error| Diagnostic::Parse {
        path: path.to_owned(),
        error,
    })?;
    let text = std::str::from_utf8(bytes).expect("validated by tokenize");
    let line_count = count_line_breaks(text) + u32::from(!text.is_empty() && !text.ends_with('\n') && !text.ends_with('\r'));
    Ok(SourceFile {
        path: path.to_owned(),
        file_id,
        package: unit.package,
        imports: unit.imports,
        classes: unit.classes,
        line_count,
    })
}
