//! Statistical model selection for heavy-tailed count data, and retrieval
//! models built on the selected distribution.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: special functions, Nelder–Mead, seeded randomness.
//! - [`distributions`]: the sixteen parametric models, MLE fitting and sampling.
//! - [`selection`]: AICc, Vuong and nested likelihood-ratio tests, KS/AD, Vuong tables.
//! - [`empirics`]: graphical-method series, log-log regression, subsampling.
//! - [`corpus`]: tokenisation, inverted index, distribution extraction.
//! - [`weighting`]: term informativeness measures and the threshold classifier.
//! - [`ranking`]: divergence-from-randomness scoring, ADR models, LM baseline.
//! - [`evaluation`]: qrels/run I/O, effectiveness metrics, t-test, cross-validation.
//! - [`cascade`]: classify → subsample → fit, producing a ranking configuration.

#![forbid(unsafe_code)]
// `!(x > 0.0)` style checks are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cascade;
pub mod config;
pub mod corpus;
pub mod distributions;
pub mod empirics;
mod error;
pub mod evaluation;
pub mod numerics;
pub mod ranking;
pub mod selection;
pub mod weighting;

pub use error::{Error, Result};
