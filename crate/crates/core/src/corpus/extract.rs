use std::collections::BTreeMap;

use super::index::InvertedIndex;
use super::io::QueryRecord;
use crate::distributions::Sample;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// f_tC of every vocabulary term.
    TermFrequency,
    /// |d| of every document.
    DocumentLength,
    /// Occurrences of each distinct normalized query string.
    QueryFrequency,
    /// Number of terms in each query.
    QueryLength,
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "term_frequency" | "tf" => Ok(Property::TermFrequency),
            "document_length" | "doc_length" | "dl" => Ok(Property::DocumentLength),
            "query_frequency" | "qf" => Ok(Property::QueryFrequency),
            "query_length" | "ql" => Ok(Property::QueryLength),
            _ => Err(Error::Config(format!("unknown property '{s}'"))),
        }
    }
}

pub enum DistributionSource<'a> {
    Index(&'a InvertedIndex),
    QueryLog(&'a [QueryRecord]),
}

/// Lowercased with runs of whitespace collapsed to one space.
pub fn normalize_query(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

pub fn extract_distribution(source: DistributionSource<'_>, property: Property) -> Result<Sample> {
    let values: Vec<f64> = match (source, property) {
        (DistributionSource::Index(idx), Property::TermFrequency) => {
            idx.terms().iter().map(|t| t.stats.collection_freq as f64).collect()
        }
        (DistributionSource::Index(idx), Property::DocumentLength) => {
            idx.doc_lengths().iter().map(|&l| l as f64).collect()
        }
        (DistributionSource::QueryLog(log), Property::QueryFrequency) => {
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            for q in log {
                *counts.entry(normalize_query(&q.raw_text)).or_insert(0) += 1;
            }
            counts.into_values().map(|c| c as f64).collect()
        }
        (DistributionSource::QueryLog(log), Property::QueryLength) => {
            log.iter().map(|q| q.terms.len() as f64).collect()
        }
        (_, p) => {
            return Err(Error::Usage(format!("{p:?} cannot be extracted from this source")));
        }
    };
    if values.is_empty() {
        return Err(Error::Empty(format!("no values for {property:?}")));
    }
    Sample::discrete(values)
}
