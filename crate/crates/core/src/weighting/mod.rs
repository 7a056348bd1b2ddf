//! Term-informativeness measures, the threshold classifier that separates
//! informative from non-informative terms, and two-component mixtures.

mod measures;
mod mixture;
mod rule;

pub use measures::{rel_df, term_weights, term_weights_from_stats, weights_tsv, z_measure, TermWeights};
pub use mixture::{mixture2_pmf, MixtureKind};
pub use rule::{
    classify_from_list, classify_terms, read_term_list, write_term_list, Classification, ClassifierRule,
    Feature,
};
