use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// Graded judgments per query; grade > 0 means relevant.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Qrels {
    pub judgments: BTreeMap<String, BTreeMap<String, u32>>,
    pub max_grade: u32,
}

impl Qrels {
    pub fn insert(&mut self, query_id: &str, doc_id: &str, grade: u32) {
        self.judgments.entry(query_id.to_string()).or_default().insert(doc_id.to_string(), grade);
        self.max_grade = self.max_grade.max(grade);
    }

    pub fn for_query(&self, query_id: &str) -> Option<&BTreeMap<String, u32>> {
        self.judgments.get(query_id)
    }

    /// Judged grade, `None` when unjudged.
    pub fn grade(&self, query_id: &str, doc_id: &str) -> Option<u32> {
        self.judgments.get(query_id)?.get(doc_id).copied()
    }

    pub fn num_relevant(&self, query_id: &str) -> usize {
        self.for_query(query_id).map_or(0, |j| j.values().filter(|&&g| g > 0).count())
    }
}

/// Parses `qid iter docid grade` lines. Negative grades are read as judged non-relevant.
pub fn parse_qrels(text: &str) -> Result<Qrels> {
    let mut q = Qrels::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::Format(format!("qrels line {}: expected 4 columns: '{line}'", lineno + 1)));
        }
        let grade: i64 =
            f[3].parse().map_err(|_| Error::Format(format!("qrels line {}: bad grade '{}'", lineno + 1, f[3])))?;
        q.insert(f[0], f[2], grade.max(0) as u32);
    }
    Ok(q)
}

pub fn write_qrels(qrels: &Qrels) -> String {
    let mut out = String::new();
    for (qid, docs) in &qrels.judgments {
        for (doc, grade) in docs {
            let _ = writeln!(out, "{qid} 0 {doc} {grade}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "1 0 a 2\n1 0 b 0\n2 0 c 1\n";
        let q = parse_qrels(text).unwrap();
        assert_eq!(q.max_grade, 2);
        assert_eq!(q.grade("1", "a"), Some(2));
        assert_eq!(q.grade("1", "z"), None);
        assert_eq!(q.num_relevant("1"), 1);
        assert_eq!(write_qrels(&q), text);
        assert_eq!(parse_qrels(&write_qrels(&q)).unwrap(), q);
        assert_eq!(parse_qrels("1 0 a -1\n").unwrap().grade("1", "a"), Some(0));
        assert!(parse_qrels("1 0 a\n").is_err());
    }
}
