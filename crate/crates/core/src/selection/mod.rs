//! Information criteria, likelihood-ratio tests, goodness-of-fit
//! statistics and the pairwise model-selection table.

mod criteria;
mod gof;
mod table;
mod tests;

pub use criteria::{aicc, aicc_value, AiccVariant};
pub use gof::{ad_statistic, ks_statistic};
pub use table::{
    build_vuong_table, select_best, ComparisonCell, ComparisonMethod, FitFailure, ModelReport,
    Selection, SelectionOptions, VuongTable,
};
pub use tests::{
    nested_lr_test, vuong_from_differences, vuong_nonnested_test, NestedLrResult, VuongResult,
};
