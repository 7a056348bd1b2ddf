use std::collections::BTreeMap;

use super::metrics::Metric;
use super::qrels::Qrels;
use crate::corpus::{InvertedIndex, QueryRecord};
use crate::ranking::{rank, RankingConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub test_queries: Vec<String>,
    pub best_value: f64,
    /// Objective of the chosen value on the training folds.
    pub train_objective: f64,
    pub test_means: BTreeMap<Metric, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    pub objective: Metric,
    pub folds: Vec<FoldResult>,
    /// Average of the per-fold test means.
    pub mean_test: BTreeMap<Metric, f64>,
}

fn query_order(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        _ => a.cmp(b),
    }
}

/// Contiguous folds over query ids in sorted order (numeric ids numerically);
/// earlier folds take the remainder.
pub fn fold_assignment(query_ids: &[String], folds: usize) -> Result<Vec<Vec<String>>> {
    if folds == 0 || query_ids.len() < folds {
        return Err(Error::Usage(format!("{} queries cannot fill {folds} folds", query_ids.len())));
    }
    let mut ids = query_ids.to_vec();
    ids.sort_by(|a, b| query_order(a, b));
    ids.dedup();
    if ids.len() < folds {
        return Err(Error::Usage(format!("{} distinct queries cannot fill {folds} folds", ids.len())));
    }
    let (base, extra) = (ids.len() / folds, ids.len() % folds);
    let mut out = Vec::with_capacity(folds);
    let mut it = ids.into_iter();
    for f in 0..folds {
        out.push(it.by_ref().take(base + usize::from(f < extra)).collect());
    }
    Ok(out)
}

fn mean_over(per_query: &BTreeMap<String, BTreeMap<Metric, f64>>, ids: &[String], metric: Metric) -> f64 {
    ids.iter().map(|q| per_query[q][&metric]).sum::<f64>() / ids.len() as f64
}

/// k-fold cross-validation of one hyperparameter. `family` builds the ranking
/// configuration for a grid value. Only judged queries take part. Ties on
/// the training objective go to the smallest grid value.
#[allow(clippy::too_many_arguments)]
pub fn cv_tune(
    queries: &[QueryRecord],
    qrels: &Qrels,
    index: &InvertedIndex,
    family: &dyn Fn(f64) -> Result<RankingConfig>,
    grid: &[f64],
    folds: usize,
    objective: Metric,
    depth: usize,
) -> Result<CvResult> {
    if grid.is_empty() {
        return Err(Error::Usage("tuning grid is empty".into()));
    }
    let judged: Vec<&QueryRecord> = queries.iter().filter(|q| qrels.for_query(&q.query_id).is_some()).collect();
    let ids: Vec<String> = judged.iter().map(|q| q.query_id.clone()).collect();
    let assignment = fold_assignment(&ids, folds)?;

    let mut table = Vec::with_capacity(grid.len());
    for &g in grid {
        let cfg = family(g)?;
        let mut per_query = BTreeMap::new();
        for q in &judged {
            let list = rank(q, index, &cfg, depth)?;
            let vals: BTreeMap<Metric, f64> = Metric::ALL.iter().map(|&m| (m, m.compute(&list, qrels).0)).collect();
            per_query.insert(q.query_id.clone(), vals);
        }
        table.push(per_query);
    }

    let mut results = Vec::with_capacity(folds);
    for (f, test) in assignment.iter().enumerate() {
        let train: Vec<String> = assignment.iter().enumerate().filter(|(i, _)| *i != f).flat_map(|(_, v)| v.clone()).collect();
        let mut best: Option<(usize, f64)> = None;
        for (gi, per_query) in table.iter().enumerate() {
            let obj = mean_over(per_query, &train, objective);
            let better = match best {
                None => true,
                Some((bi, bo)) => obj > bo || (obj == bo && grid[gi] < grid[bi]),
            };
            if better {
                best = Some((gi, obj));
            }
        }
        let (gi, train_objective) = best.expect("grid is non-empty");
        let test_means = Metric::ALL.iter().map(|&m| (m, mean_over(&table[gi], test, m))).collect();
        results.push(FoldResult { test_queries: test.clone(), best_value: grid[gi], train_objective, test_means });
    }
    let mean_test = Metric::ALL
        .iter()
        .map(|&m| (m, results.iter().map(|r| r.test_means[&m]).sum::<f64>() / results.len() as f64))
        .collect();
    Ok(CvResult { objective, folds: results, mean_test })
}
