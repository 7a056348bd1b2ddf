//! Graphical data series (raw histogram, ECCDF, logarithmic bins), log-log
//! least-squares exponent estimates and subsampling.

mod histogram;
mod ols;
mod subsample;

pub use histogram::{eccdf, log_binned_histogram, raw_histogram, HistogramSeries, SeriesKind};
pub use ols::{loglog_exponent_estimate, ols_fit, OlsFit};
pub use subsample::{subsample, SubsampleMethod};
