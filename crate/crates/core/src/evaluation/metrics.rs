use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use super::qrels::Qrels;
use crate::ranking::RankedList;
use crate::{Error, Result};

pub const EVAL_DEPTH: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Map,
    P10,
    Ndcg,
    Ndcg10,
    Bpref,
    Err20,
}

impl Metric {
    pub const ALL: [Metric; 6] = [Metric::Map, Metric::P10, Metric::Ndcg, Metric::Ndcg10, Metric::Bpref, Metric::Err20];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Map => "map",
            Metric::P10 => "P@10",
            Metric::Ndcg => "ndcg",
            Metric::Ndcg10 => "ndcg@10",
            Metric::Bpref => "bpref",
            Metric::Err20 => "err@20",
        }
    }

    /// Per-query value; the flag is set when the value is a convention for an
    /// undefined case (no relevant or no graded documents).
    pub fn compute(self, list: &RankedList, qrels: &Qrels) -> (f64, bool) {
        let undefined = qrels.num_relevant(&list.query_id) == 0;
        let v = match self {
            Metric::Map => average_precision(list, qrels, EVAL_DEPTH),
            Metric::P10 => precision_at(list, qrels, 10),
            Metric::Ndcg => ndcg(list, qrels, None),
            Metric::Ndcg10 => ndcg(list, qrels, Some(10)),
            Metric::Bpref => bpref(list, qrels),
            Metric::Err20 => err_at_k(list, qrels, 20),
        };
        (v, undefined)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "map" | "ap" => Metric::Map,
            "p@10" | "p10" | "p_10" => Metric::P10,
            "ndcg" => Metric::Ndcg,
            "ndcg@10" | "ndcg10" | "ndcg_cut_10" => Metric::Ndcg10,
            "bpref" => Metric::Bpref,
            "err@20" | "err20" => Metric::Err20,
            other => return Err(Error::Config(format!("unknown metric '{other}'"))),
        })
    }
}

fn grades<'a>(list: &'a RankedList, qrels: &'a Qrels, depth: usize) -> impl Iterator<Item = Option<u32>> + 'a {
    let judged = qrels.for_query(&list.query_id);
    list.entries.iter().take(depth).map(move |e| judged.and_then(|j| j.get(&e.doc_id).copied()))
}

pub fn average_precision(list: &RankedList, qrels: &Qrels, depth: usize) -> f64 {
    let r = qrels.num_relevant(&list.query_id);
    if r == 0 {
        return 0.0;
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, g) in grades(list, qrels, depth).enumerate() {
        if g.unwrap_or(0) > 0 {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    sum / r as f64
}

pub fn precision_at(list: &RankedList, qrels: &Qrels, k: usize) -> f64 {
    grades(list, qrels, k).filter(|g| g.unwrap_or(0) > 0).count() as f64 / k as f64
}

fn dcg(gains: impl Iterator<Item = u32>) -> f64 {
    gains.enumerate().map(|(i, g)| ((g as f64).exp2() - 1.0) / ((i + 2) as f64).log2()).sum()
}

/// nDCG with gain 2^g − 1 and discount 1/log₂(i + 1), optionally cut at `cutoff`.
pub fn ndcg(list: &RankedList, qrels: &Qrels, cutoff: Option<usize>) -> f64 {
    let depth = cutoff.unwrap_or(EVAL_DEPTH);
    let mut ideal: Vec<u32> = qrels.for_query(&list.query_id).map_or(Vec::new(), |j| j.values().copied().collect());
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let idcg = dcg(ideal.into_iter().take(depth));
    if idcg == 0.0 {
        return 0.0;
    }
    dcg(grades(list, qrels, depth).map(|g| g.unwrap_or(0))) / idcg
}

/// Bpref over judged documents only; unjudged documents are skipped.
pub fn bpref(list: &RankedList, qrels: &Qrels) -> f64 {
    let Some(judged) = qrels.for_query(&list.query_id) else { return 0.0 };
    let r = judged.values().filter(|&&g| g > 0).count();
    if r == 0 {
        return 0.0;
    }
    let n_nonrel = judged.len() - r;
    let denom = r.min(n_nonrel);
    let mut nonrel_above = 0usize;
    let mut sum = 0.0;
    for g in grades(list, qrels, EVAL_DEPTH).flatten() {
        if g > 0 {
            sum += if denom == 0 { 1.0 } else { 1.0 - nonrel_above.min(r) as f64 / denom as f64 };
        } else {
            nonrel_above += 1;
        }
    }
    sum / r as f64
}

/// Expected reciprocal rank at `k`, with grades scaled by the qrels' maximum grade.
pub fn err_at_k(list: &RankedList, qrels: &Qrels, k: usize) -> f64 {
    if qrels.max_grade == 0 {
        return 0.0;
    }
    let scale = (qrels.max_grade as f64).exp2();
    let mut not_stopped = 1.0;
    let mut err = 0.0;
    for (i, g) in grades(list, qrels, k).enumerate() {
        let r = ((g.unwrap_or(0) as f64).exp2() - 1.0) / scale;
        err += not_stopped * r / (i + 1) as f64;
        not_stopped *= 1.0 - r;
    }
    err
}

/// Per-query and mean values of every metric over the queries present in
/// both the run and the qrels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricReport {
    pub per_query: BTreeMap<String, BTreeMap<Metric, f64>>,
    pub means: BTreeMap<Metric, f64>,
    pub warnings: Vec<String>,
}

impl MetricReport {
    pub fn mean(&self, metric: Metric) -> f64 {
        self.means.get(&metric).copied().unwrap_or(0.0)
    }

    /// Values of `metric` in query-id order.
    pub fn values(&self, metric: Metric) -> Vec<f64> {
        self.per_query.values().map(|m| m[&metric]).collect()
    }

    /// One row per (model, metric) with the mean value.
    pub fn summary_tsv(&self, model: &str) -> String {
        let mut out = String::new();
        for (m, v) in &self.means {
            let _ = writeln!(out, "{model}\t{m}\t{v:.6}");
        }
        out
    }

    pub fn per_query_tsv(&self) -> String {
        let mut out = String::from("query");
        for m in Metric::ALL {
            let _ = write!(out, "\t{m}");
        }
        out.push('\n');
        for (q, vals) in &self.per_query {
            out.push_str(q);
            for m in Metric::ALL {
                let _ = write!(out, "\t{:.6}", vals[&m]);
            }
            out.push('\n');
        }
        out
    }
}

pub fn evaluate_run(run: &[RankedList], qrels: &Qrels) -> MetricReport {
    let mut report = MetricReport::default();
    let mut seen = std::collections::BTreeSet::new();
    for list in run {
        seen.insert(list.query_id.as_str());
        if qrels.for_query(&list.query_id).is_none() {
            report.warnings.push(format!("query '{}' has no judgments; skipped", list.query_id));
            continue;
        }
        let mut vals = BTreeMap::new();
        let mut flagged = false;
        for m in Metric::ALL {
            let (v, undefined) = m.compute(list, qrels);
            flagged |= undefined;
            vals.insert(m, v);
        }
        if flagged {
            report.warnings.push(format!("query '{}' has no relevant documents; metrics set to 0", list.query_id));
        }
        report.per_query.insert(list.query_id.clone(), vals);
    }
    for q in qrels.judgments.keys() {
        if !seen.contains(q.as_str()) {
            report.warnings.push(format!("judged query '{q}' is missing from the run; skipped"));
        }
    }
    let n = report.per_query.len();
    if n > 0 {
        for m in Metric::ALL {
            let total: f64 = report.per_query.values().map(|v| v[&m]).sum();
            report.means.insert(m, total / n as f64);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::ScoredDoc;

    fn list(ids: &[&str]) -> RankedList {
        RankedList {
            query_id: "q".into(),
            entries: ids
                .iter()
                .enumerate()
                .map(|(i, d)| ScoredDoc { doc_id: d.to_string(), score: -(i as f64) })
                .collect(),
            warnings: vec![],
        }
    }

    fn qrels(pairs: &[(&str, u32)]) -> Qrels {
        let mut q = Qrels::default();
        for (d, g) in pairs {
            q.insert("q", d, *g);
        }
        q
    }

    #[test]
    fn average_precision_cases() {
        let q = qrels(&[("a", 1), ("c", 1), ("b", 0)]);
        assert!((average_precision(&list(&["a", "b", "c"]), &q, 1000) - 0.833333).abs() < 1e-6);
        assert_eq!(average_precision(&list(&["a", "c", "b"]), &q, 1000), 1.0);
        assert_eq!(average_precision(&list(&["b", "x"]), &q, 1000), 0.0);
        assert_eq!(average_precision(&list(&["a", "c"]), &qrels(&[("b", 0)]), 1000), 0.0);
        // An unretrieved relevant document counts against AP.
        assert_eq!(average_precision(&list(&["a"]), &q, 1000), 0.5);
    }

    #[test]
    fn ndcg_cases() {
        let q = qrels(&[("a", 0), ("b", 1)]);
        assert!((ndcg(&list(&["a", "b"]), &q, None) - 0.630930).abs() < 1e-6);
        assert_eq!(ndcg(&list(&["b", "a"]), &q, None), 1.0);
        let g = qrels(&[("a", 2), ("b", 2), ("c", 1)]);
        assert_eq!(ndcg(&list(&["a", "b", "c"]), &g, Some(10)), ndcg(&list(&["b", "a", "c"]), &g, Some(10)));
        assert_eq!(ndcg(&list(&["a", "b", "c"]), &g, None), 1.0);
        assert_eq!(ndcg(&list(&["a"]), &qrels(&[("a", 0)]), None), 0.0);
    }

    #[test]
    fn bpref_cases() {
        let q = qrels(&[("r", 1), ("n", 0)]);
        assert_eq!(bpref(&list(&["r", "n"]), &q), 1.0);
        assert_eq!(bpref(&list(&["n", "r"]), &q), 0.0);
        let mixed = qrels(&[("r1", 1), ("r2", 1), ("n1", 0), ("n2", 0), ("n3", 0)]);
        let with = bpref(&list(&["u1", "r1", "n1", "u2", "r2", "n2"]), &mixed);
        let without = bpref(&list(&["r1", "n1", "r2", "n2"]), &mixed);
        assert_eq!(with, without);
        assert!((with - 0.75).abs() < 1e-12);
        assert_eq!(bpref(&list(&["r1"]), &qrels(&[("r1", 1), ("r2", 1)])), 0.5);
    }

    #[test]
    fn err_cases() {
        assert_eq!(err_at_k(&list(&["a"]), &qrels(&[("a", 1)]), 20), 0.5);
        assert_eq!(err_at_k(&list(&["a", "b"]), &qrels(&[("a", 0), ("b", 0)]), 20), 0.0);
        let q = qrels(&[("z", 0), ("p", 3)]);
        let r = (8.0 - 1.0) / 8.0;
        assert!((err_at_k(&list(&["z", "p"]), &q, 20) - 0.5 * r).abs() < 1e-15);
    }

    #[test]
    fn precision_cases() {
        let q = qrels(&[("a", 1), ("b", 1)]);
        assert_eq!(precision_at(&list(&["a", "x", "b"]), &q, 10), 0.2);
    }

    #[test]
    fn report_uses_intersection() {
        let mut q = qrels(&[("a", 1)]);
        q.insert("other", "z", 1);
        let mut l2 = list(&["z"]);
        l2.query_id = "unjudged".into();
        let report = evaluate_run(&[list(&["a", "b"]), l2], &q);
        assert_eq!(report.per_query.len(), 1);
        assert_eq!(report.warnings.len(), 2);
        assert_eq!(report.mean(Metric::Map), 1.0);
        assert_eq!(report.mean(Metric::Ndcg), 1.0);
        assert!(report.summary_tsv("m").contains("m\tmap\t1.000000"));
    }
}
