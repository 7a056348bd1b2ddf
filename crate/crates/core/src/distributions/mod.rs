//! The sixteen parametric models: densities, CDFs, likelihoods, MLE fits
//! and sampling.
//!
//! Conventions that differ between references:
//!
//! - Yule–Simon uses `p · B(x, p + 1)` on `x ≥ 1`, `p > 0`.
//! - Geometric uses `(1 − p)^x · p` on `x ≥ 0`.
//! - Negative binomial uses `C(r + x − 1, x) · p^x · (1 − p)^r` on `x ≥ 0`, with real `r > 0`.
//! - The discrete power law is normalised by the Hurwitz zeta function and its
//!   lower cutoff is fixed to the sample minimum when fitting.

mod density;
mod fit;
mod model;
mod sample;
mod sampling;

pub use density::{cdf, log_density, log_likelihood, PreparedModel};
pub use fit::{mle_fit, FitOptions, FitRecord, FittedModel};
pub use model::{nested_pairs, ModelId, ParamVector, Support};
pub use sample::Sample;
pub use sampling::random_sample;
