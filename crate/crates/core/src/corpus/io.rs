use std::fs;
use std::path::Path;

use serde::Deserialize;

use super::tokenize::{tokenize, TokenizerConfig};
use crate::distributions::Sample;
use crate::{Error, Result};

/// A query with its tokens; the token list is never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryRecord {
    pub query_id: String,
    pub terms: Vec<String>,
    pub raw_text: String,
}

impl QueryRecord {
    pub fn new(query_id: impl Into<String>, raw_text: &str, config: &TokenizerConfig) -> Result<Self> {
        let query_id = query_id.into();
        let terms = tokenize(raw_text, config);
        if terms.is_empty() {
            return Err(Error::Format(format!("query '{query_id}' has no terms: '{raw_text}'")));
        }
        Ok(Self { query_id, terms, raw_text: raw_text.to_string() })
    }
}

#[derive(Deserialize)]
struct DocLine {
    doc_id: String,
    text: String,
}

/// Documents from a directory (one file per document, file name = id) or a
/// line-delimited file whose lines are JSON objects with `doc_id` and
/// `text`, or `doc_id<TAB>text`.
pub fn read_documents(path: &Path) -> Result<Vec<(String, String)>> {
    if path.is_dir() {
        let mut docs = Vec::new();
        for entry in fs::read_dir(path)? {
            let entry = entry?;
            if !entry.file_type()?.is_file() {
                continue;
            }
            let name = entry.file_name().to_string_lossy().into_owned();
            let bytes = fs::read(entry.path())?;
            docs.push((name, String::from_utf8_lossy(&bytes).into_owned()));
        }
        docs.sort();
        return Ok(docs);
    }
    let text = fs::read_to_string(path)?;
    let mut docs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let doc = if line.trim_start().starts_with('{') {
            let d: DocLine = serde_json::from_str(line)
                .map_err(|e| Error::Format(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
            (d.doc_id, d.text)
        } else {
            let (id, body) = line.split_once('\t').ok_or_else(|| {
                Error::Format(format!("{}:{}: expected doc_id<TAB>text", path.display(), lineno + 1))
            })?;
            (id.to_string(), body.to_string())
        };
        docs.push(doc);
    }
    Ok(docs)
}

/// Queries, one per line: `query_id<TAB>text`, or bare text numbered from 1.
pub fn read_queries(path: &Path, config: &TokenizerConfig) -> Result<Vec<QueryRecord>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (id, body) = match line.split_once('\t') {
            Some((id, body)) => (id.trim().to_string(), body),
            None => ((lineno + 1).to_string(), line),
        };
        out.push(
            QueryRecord::new(id, body, config)
                .map_err(|e| Error::Format(format!("{}:{}: {e}", path.display(), lineno + 1)))?,
        );
    }
    Ok(out)
}

/// One nonnegative integer per line; blank lines and `#` comments skipped.
pub fn read_counts(path: &Path) -> Result<Sample> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: u64 = line.parse().map_err(|_| {
            Error::Format(format!("{}:{}: '{line}' is not a nonnegative integer", path.display(), lineno + 1))
        })?;
        values.push(v as f64);
    }
    if values.is_empty() {
        return Err(Error::Empty(format!("{} holds no counts", path.display())));
    }
    Sample::discrete(values)
}

/// One finite real per line; blank lines and `#` comments skipped. The
/// sample is discrete when every value is a nonnegative integer.
pub fn read_values(path: &Path) -> Result<Sample> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::Format(format!("{}:{}: '{line}' is not a finite number", path.display(), lineno + 1)))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Empty(format!("{} holds no values", path.display())));
    }
    Sample::new(values)
}
