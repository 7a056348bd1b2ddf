//! Relevance judgments, effectiveness metrics, paired significance testing
//! and cross-validated hyperparameter tuning.

mod metrics;
mod qrels;
mod significance;
mod tune;

pub use metrics::{
    average_precision, bpref, err_at_k, evaluate_run, ndcg, precision_at, Metric, MetricReport, EVAL_DEPTH,
};
pub use qrels::{parse_qrels, write_qrels, Qrels};
pub use significance::{paired_t_test, TTest};
pub use tune::{cv_tune, fold_assignment, CvResult, FoldResult};
