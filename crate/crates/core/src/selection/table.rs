use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::criteria::{aicc, AiccVariant};
use super::gof::{ad_statistic, ks_statistic};
use super::tests::{nested_lr_test, vuong_nonnested_test};
use crate::distributions::{mle_fit, nested_pairs, FitOptions, FittedModel, ModelId, PreparedModel, Sample};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SelectionOptions {
    pub fit: FitOptions,
    /// Significance level for counting a comparison as a win.
    pub alpha: f64,
    pub criterion: AiccVariant,
    /// Compute KS and AD statistics for every fit (reported only).
    pub goodness_of_fit: bool,
}

impl Default for SelectionOptions {
    fn default() -> Self {
        Self {
            fit: FitOptions::default(),
            alpha: 0.05,
            criterion: AiccVariant::HurvichTsai,
            goodness_of_fit: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonMethod {
    Vuong,
    NestedLr,
    Indistinguishable,
}

/// One pairwise comparison. `lr = L_row − L_col`: positive favours the
/// row model, negative the column model.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCell {
    pub row_model: ModelId,
    pub col_model: ModelId,
    pub lr: f64,
    pub p_value: f64,
    pub method: ComparisonMethod,
    /// Vuong z, or the nested χ² statistic d.
    pub statistic: Option<f64>,
}

impl ComparisonCell {
    /// The preferred model at significance `alpha`, if any.
    pub fn winner(&self, alpha: f64) -> Option<ModelId> {
        if self.method == ComparisonMethod::Indistinguishable || !(self.p_value < alpha) {
            return None;
        }
        if self.lr > 0.0 {
            Some(self.row_model)
        } else if self.lr < 0.0 {
            Some(self.col_model)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelReport {
    pub fit: FittedModel,
    pub criterion: f64,
    pub wins: usize,
    pub ks: Option<f64>,
    pub ad: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitFailure {
    pub model: ModelId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VuongTable {
    /// Models that were fitted successfully, in request order.
    pub models: Vec<ModelId>,
    pub reports: Vec<ModelReport>,
    /// Upper-triangular cells, row-major: (0,1), (0,2), …, (1,2), …
    pub cells: Vec<ComparisonCell>,
    pub failures: Vec<FitFailure>,
    pub alpha: f64,
    pub criterion: AiccVariant,
    pub best_overall: ModelId,
    pub best_discrete: Option<ModelId>,
}

/// Outcome of the selection step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub overall: ModelId,
    pub discrete: Option<ModelId>,
    /// Whether the criterion minimiser equals `overall`.
    pub agreement_with_aicc: bool,
    pub aicc_best: ModelId,
    /// True when a tie on wins was broken by the criterion.
    pub tie_broken: bool,
}

impl VuongTable {
    pub fn cell(&self, a: ModelId, b: ModelId) -> Option<&ComparisonCell> {
        self.cells
            .iter()
            .find(|c| (c.row_model == a && c.col_model == b) || (c.row_model == b && c.col_model == a))
    }

    pub fn report(&self, m: ModelId) -> Option<&ModelReport> {
        self.reports.iter().find(|r| r.fit.model == m)
    }

    pub fn wins(&self, m: ModelId) -> Option<usize> {
        self.report(m).map(|r| r.wins)
    }

    /// Tab-separated layout: one row per model, a (p, LR) column pair per
    /// model filled above the diagonal, then criterion and win-count rows.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("model");
        for m in &self.models {
            let _ = write!(out, "\t{0}.p\t{0}.LR", m.short_name());
        }
        out.push('\n');
        for (i, row) in self.models.iter().enumerate() {
            out.push_str(row.short_name());
            for (j, col) in self.models.iter().enumerate() {
                if j <= i {
                    out.push_str("\t\t");
                    continue;
                }
                let c = self.cell(*row, *col).expect("cell for every pair");
                let _ = write!(out, "\t{}\t{}", fmt_p(c.p_value), fmt_num(c.lr));
            }
            out.push('\n');
        }
        out.push_str("AICc");
        for r in &self.reports {
            let _ = write!(out, "\t{}\t", fmt_num(r.criterion));
        }
        out.push('\n');
        out.push_str("wins");
        for r in &self.reports {
            let _ = write!(out, "\t{}\t", r.wins);
        }
        out.push('\n');
        out
    }

    /// One JSON object per line: fits, cells, failures, then the selection.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let f = &r.fit;
            let params: serde_json::Map<String, serde_json::Value> = f
                .model
                .param_names()
                .iter()
                .zip(f.params.values())
                .map(|(n, v)| (n.to_string(), json!(v)))
                .collect();
            let rec = json!({
                "record": "fit",
                "model": f.model.name(),
                "params": params,
                "n": f.n,
                "total_loglik": f.total_loglik,
                "criterion": r.criterion,
                "wins": r.wins,
                "ks": r.ks,
                "ad": r.ad,
                "converged": f.converged,
                "continuous_on_discrete": f.continuous_on_discrete,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        for c in &self.cells {
            let rec = json!({
                "record": "cell",
                "row": c.row_model.name(),
                "col": c.col_model.name(),
                "lr": finite_or_null(c.lr),
                "p": c.p_value,
                "statistic": c.statistic.and_then(|s| s.is_finite().then_some(s)),
                "method": c.method,
                "winner": c.winner(self.alpha).map(|m| m.name()),
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        for f in &self.failures {
            let rec = json!({"record": "failure", "model": f.model.name(), "reason": f.reason});
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        let sel = select_best(self);
        let rec = json!({
            "record": "selection",
            "best_overall": sel.overall.name(),
            "best_discrete": sel.discrete.map(|m| m.name()),
            "criterion": self.criterion.to_string(),
            "criterion_best": sel.aicc_best.name(),
            "agreement_with_criterion": sel.agreement_with_aicc,
            "tie_broken": sel.tie_broken,
        });
        out.push_str(&rec.to_string());
        out.push('\n');
        out
    }
}

fn finite_or_null(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn fmt_p(p: f64) -> String {
    if p < 1e-3 {
        format!("{p:.2e}")
    } else {
        format!("{p:.3}")
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:.2}")
}

/// Estimation, comparison and selection over `models`.
///
/// Models that cannot be fitted, or whose optimizer did not converge, are
/// listed in `failures` and take no part in the comparisons.
pub fn build_vuong_table(
    sample: &Sample,
    models: &[ModelId],
    options: &SelectionOptions,
) -> Result<VuongTable> {
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for &m in models {
        match mle_fit(m, sample, &options.fit) {
            Ok(fit) if !fit.converged => failures.push(FitFailure {
                model: m,
                reason: format!("optimizer did not converge after {} iterations", fit.iterations),
            }),
            Ok(fit) => match aicc(&fit, options.criterion) {
                Ok(criterion) => {
                    let (ks, ad) = if options.goodness_of_fit {
                        goodness_of_fit(&fit, sample)
                    } else {
                        (None, None)
                    };
                    reports.push(ModelReport { fit, criterion, wins: 0, ks, ad });
                }
                Err(e) => failures.push(FitFailure { model: m, reason: e.to_string() }),
            },
            Err(e) => failures.push(FitFailure { model: m, reason: e.to_string() }),
        }
    }
    if reports.is_empty() {
        return Err(Error::Empty("no model could be fitted to the sample".into()));
    }

    let nested = nested_pairs();
    let mut cells = Vec::new();
    for i in 0..reports.len() {
        for j in (i + 1)..reports.len() {
            let (a, b) = (&reports[i].fit, &reports[j].fit);
            let lr = a.total_loglik - b.total_loglik;
            let cell = if nested.contains(&(a.model, b.model)) || nested.contains(&(b.model, a.model)) {
                let t = if nested.contains(&(a.model, b.model)) {
                    nested_lr_test(a, b)?
                } else {
                    nested_lr_test(b, a)?
                };
                ComparisonCell {
                    row_model: a.model,
                    col_model: b.model,
                    lr,
                    p_value: t.p,
                    method: ComparisonMethod::NestedLr,
                    statistic: Some(t.d),
                }
            } else {
                let v = vuong_nonnested_test(a, b)?;
                ComparisonCell {
                    row_model: a.model,
                    col_model: b.model,
                    lr: v.lr,
                    p_value: v.p,
                    method: if v.is_indistinguishable() {
                        ComparisonMethod::Indistinguishable
                    } else {
                        ComparisonMethod::Vuong
                    },
                    statistic: v.z,
                }
            };
            cells.push(cell);
        }
    }
    for c in &cells {
        if let Some(w) = c.winner(options.alpha) {
            reports.iter_mut().find(|r| r.fit.model == w).expect("winner is fitted").wins += 1;
        }
    }

    let mut table = VuongTable {
        models: reports.iter().map(|r| r.fit.model).collect(),
        reports,
        cells,
        failures,
        alpha: options.alpha,
        criterion: options.criterion,
        best_overall: ModelId::Exponential,
        best_discrete: None,
    };
    let sel = select_best(&table);
    table.best_overall = sel.overall;
    table.best_discrete = sel.discrete;
    Ok(table)
}

fn goodness_of_fit(fit: &FittedModel, sample: &Sample) -> (Option<f64>, Option<f64>) {
    let Ok(pm) = PreparedModel::new(fit.model, &fit.params) else {
        return (None, None);
    };
    let ks = ks_statistic(sample, |x| pm.cdf(x));
    let ad = ad_statistic(sample, |x| pm.cdf(x)).ok();
    (Some(ks), ad)
}

/// Most wins; ties go to the lower criterion value.
pub fn select_best(table: &VuongTable) -> Selection {
    let pick = |filter: &dyn Fn(&ModelReport) -> bool| -> Option<(ModelId, bool)> {
        let candidates: Vec<&ModelReport> = table.reports.iter().filter(|r| filter(r)).collect();
        let top = candidates.iter().map(|r| r.wins).max()?;
        let tied: Vec<&&ModelReport> = candidates.iter().filter(|r| r.wins == top).collect();
        let best = tied
            .iter()
            .min_by(|a, b| a.criterion.total_cmp(&b.criterion))
            .expect("at least one candidate");
        Some((best.fit.model, tied.len() > 1))
    };
    let (overall, tie_broken) = pick(&|_| true).expect("table has at least one fitted model");
    let discrete = pick(&|r| r.fit.model.is_discrete()).map(|(m, _)| m);
    let aicc_best = table
        .reports
        .iter()
        .min_by(|a, b| a.criterion.total_cmp(&b.criterion))
        .map(|r| r.fit.model)
        .expect("nonempty");
    Selection { overall, discrete, agreement_with_aicc: aicc_best == overall, aicc_best, tie_broken }
}
