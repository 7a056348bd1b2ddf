use std::collections::HashMap;

use super::tokenize::{tokenize, TokenizerConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusStats {
    /// N, the number of documents.
    pub num_docs: u64,
    pub total_terms: u64,
    /// total_terms / N.
    pub avg_doc_len: f64,
    pub vocab_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermStats {
    pub term: String,
    /// f_tC
    pub collection_freq: u64,
    /// n_t
    pub doc_freq: u64,
}

/// Document index (into the sorted document list) and term frequency f_td.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc: u32,
    pub tf: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermEntry {
    pub stats: TermStats,
    /// Sorted by document index.
    pub postings: Vec<Posting>,
}

/// Immutable inverted index. Documents are held sorted by id and terms
/// sorted lexicographically, so the index does not depend on ingestion order.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    doc_ids: Vec<String>,
    doc_lengths: Vec<u64>,
    terms: Vec<TermEntry>,
    lookup: HashMap<String, usize>,
    total_terms: u64,
}

impl PartialEq for InvertedIndex {
    fn eq(&self, other: &Self) -> bool {
        self.doc_ids == other.doc_ids && self.doc_lengths == other.doc_lengths && self.terms == other.terms
    }
}

impl InvertedIndex {
    /// Assemble from parts, checking every count invariant.
    pub(crate) fn from_parts(doc_ids: Vec<String>, doc_lengths: Vec<u64>, terms: Vec<TermEntry>) -> Result<Self> {
        if doc_ids.is_empty() {
            return Err(Error::Empty("an index needs at least one document".into()));
        }
        if doc_ids.len() != doc_lengths.len() {
            return Err(Error::Format("document id and length tables differ in size".into()));
        }
        if doc_ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("document ids are not strictly sorted".into()));
        }
        if terms.windows(2).any(|w| w[0].stats.term >= w[1].stats.term) {
            return Err(Error::Format("terms are not strictly sorted".into()));
        }
        let n = doc_ids.len() as u64;
        let mut per_doc = vec![0u64; doc_ids.len()];
        for t in &terms {
            let s = &t.stats;
            let sum: u64 = t.postings.iter().map(|p| p.tf as u64).sum();
            if sum != s.collection_freq
                || t.postings.len() as u64 != s.doc_freq
                || s.doc_freq == 0
                || s.doc_freq > n.min(s.collection_freq)
                || t.postings.windows(2).any(|w| w[0].doc >= w[1].doc)
                || t.postings.iter().any(|p| p.tf == 0 || p.doc as usize >= doc_ids.len())
            {
                return Err(Error::Format(format!("inconsistent postings for term '{}'", s.term)));
            }
            for p in &t.postings {
                per_doc[p.doc as usize] += p.tf as u64;
            }
        }
        if per_doc != doc_lengths {
            return Err(Error::Format("document lengths disagree with postings".into()));
        }
        let total_terms = doc_lengths.iter().sum();
        let lookup = terms.iter().enumerate().map(|(i, t)| (t.stats.term.clone(), i)).collect();
        Ok(Self { doc_ids, doc_lengths, terms, lookup, total_terms })
    }

    pub fn stats(&self) -> CorpusStats {
        let n = self.doc_ids.len() as u64;
        CorpusStats {
            num_docs: n,
            total_terms: self.total_terms,
            avg_doc_len: self.total_terms as f64 / n as f64,
            vocab_size: self.terms.len() as u64,
        }
    }

    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn term(&self, term: &str) -> Option<&TermEntry> {
        self.lookup.get(term).map(|&i| &self.terms[i])
    }

    pub fn term_stats(&self, term: &str) -> Result<&TermStats> {
        self.term(term)
            .map(|t| &t.stats)
            .ok_or_else(|| Error::NotFound(format!("term '{term}' is not in the vocabulary")))
    }

    /// Terms in lexicographic order.
    pub fn terms(&self) -> &[TermEntry] {
        &self.terms
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_id(&self, doc: u32) -> &str {
        &self.doc_ids[doc as usize]
    }

    pub fn doc_lengths(&self) -> &[u64] {
        &self.doc_lengths
    }

    pub fn doc_len(&self, doc: u32) -> u64 {
        self.doc_lengths[doc as usize]
    }

    pub fn doc_index(&self, id: &str) -> Option<u32> {
        self.doc_ids.binary_search_by(|d| d.as_str().cmp(id)).ok().map(|i| i as u32)
    }

    /// f_td, zero when the term is absent from the document.
    pub fn term_frequency(&self, term: &str, doc: u32) -> u32 {
        self.term(term)
            .and_then(|t| t.postings.binary_search_by_key(&doc, |p| p.doc).ok().map(|i| t.postings[i].tf))
            .unwrap_or(0)
    }
}

/// Index `(doc_id, text)` pairs. Duplicate ids and an empty corpus are errors.
pub fn build_index<I, S, T>(documents: I, config: &TokenizerConfig) -> Result<InvertedIndex>
where
    I: IntoIterator<Item = (S, T)>,
    S: Into<String>,
    T: AsRef<str>,
{
    let mut docs: Vec<(String, Vec<String>)> = documents
        .into_iter()
        .map(|(id, text)| (id.into(), tokenize(text.as_ref(), config)))
        .collect();
    if docs.is_empty() {
        return Err(Error::Empty("cannot index an empty corpus".into()));
    }
    docs.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = docs.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Format(format!("duplicate document id '{}'", w[0].0)));
    }
    let mut postings: HashMap<String, Vec<Posting>> = HashMap::new();
    let mut doc_lengths = Vec::with_capacity(docs.len());
    let mut doc_ids = Vec::with_capacity(docs.len());
    for (i, (id, tokens)) in docs.into_iter().enumerate() {
        doc_lengths.push(tokens.len() as u64);
        doc_ids.push(id);
        let mut counts: HashMap<String, u32> = HashMap::new();
        for t in tokens {
            *counts.entry(t).or_insert(0) += 1;
        }
        for (t, tf) in counts {
            postings.entry(t).or_default().push(Posting { doc: i as u32, tf });
        }
    }
    let mut terms: Vec<TermEntry> = postings
        .into_iter()
        .map(|(term, postings)| {
            let collection_freq = postings.iter().map(|p| p.tf as u64).sum();
            let doc_freq = postings.len() as u64;
            TermEntry { stats: TermStats { term, collection_freq, doc_freq }, postings }
        })
        .collect();
    terms.sort_by(|a, b| a.stats.term.cmp(&b.stats.term));
    InvertedIndex::from_parts(doc_ids, doc_lengths, terms)
}
