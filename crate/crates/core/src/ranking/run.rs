use std::fmt::Write as _;

use super::score::{RankedList, ScoredDoc};
use crate::{Error, Result};

/// TREC run lines `qid Q0 docid rank score tag`, ranks from 1, scores to six decimals.
pub fn write_run(lists: &[RankedList], tag: &str) -> String {
    let mut out = String::new();
    for list in lists {
        for (i, e) in list.entries.iter().enumerate() {
            let _ = writeln!(out, "{} Q0 {} {} {:.6} {}", list.query_id, e.doc_id, i + 1, e.score, tag);
        }
    }
    out
}

/// Parses a TREC run. Lists keep first-appearance query order; entries are
/// ordered by their rank column.
pub fn parse_run(text: &str) -> Result<Vec<RankedList>> {
    let mut lists: Vec<RankedList> = Vec::new();
    let mut ranks: Vec<Vec<u64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| Error::Format(format!("run line {}: {what}: '{line}'", lineno + 1));
        if f.len() != 6 {
            return Err(bad("expected 6 columns"));
        }
        let rank: u64 = f[3].parse().map_err(|_| bad("bad rank"))?;
        let score: f64 = f[4].parse().map_err(|_| bad("bad score"))?;
        if !score.is_finite() {
            return Err(bad("non-finite score"));
        }
        let pos = match lists.iter().position(|l| l.query_id == f[0]) {
            Some(p) => p,
            None => {
                lists.push(RankedList { query_id: f[0].to_string(), ..Default::default() });
                ranks.push(Vec::new());
                lists.len() - 1
            }
        };
        lists[pos].entries.push(ScoredDoc { doc_id: f[2].to_string(), score });
        ranks[pos].push(rank);
    }
    for (list, r) in lists.iter_mut().zip(ranks) {
        let mut paired: Vec<(u64, ScoredDoc)> = r.into_iter().zip(list.entries.drain(..)).collect();
        paired.sort_by_key(|(rank, _)| *rank);
        if has_duplicates(&paired) {
            return Err(Error::Format(format!("query '{}' lists a document twice", list.query_id)));
        }
        list.entries = paired.into_iter().map(|(_, e)| e).collect();
    }
    Ok(lists)
}

fn has_duplicates(entries: &[(u64, ScoredDoc)]) -> bool {
    let mut ids: Vec<&str> = entries.iter().map(|(_, e)| e.doc_id.as_str()).collect();
    ids.sort_unstable();
    ids.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let lists = vec![
            RankedList {
                query_id: "7".into(),
                entries: vec![
                    ScoredDoc { doc_id: "d2".into(), score: 3.25 },
                    ScoredDoc { doc_id: "d1".into(), score: -0.5 },
                ],
                warnings: vec![],
            },
            RankedList {
                query_id: "3".into(),
                entries: vec![ScoredDoc { doc_id: "d9".into(), score: 1.0 }],
                warnings: vec![],
            },
        ];
        let text = write_run(&lists, "run");
        assert!(text.starts_with("7 Q0 d2 1 3.250000 run\n7 Q0 d1 2 -0.500000 run\n"));
        assert_eq!(parse_run(&text).unwrap(), lists);
    }

    #[test]
    fn orders_by_rank_and_rejects_junk() {
        let parsed = parse_run("1 Q0 b 2 0.1 x\n1 Q0 a 1 0.2 x\n").unwrap();
        assert_eq!(parsed[0].entries[0].doc_id, "a");
        assert!(parse_run("1 Q0 a 1 0.2\n").is_err());
        assert!(parse_run("1 Q0 a one 0.2 x\n").is_err());
        assert!(parse_run("1 Q0 a 1 0.2 x\n1 Q0 a 2 0.1 x\n").is_err());
    }
}
