use crate::numerics::lgamma;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixtureKind {
    Poisson,
    /// Start-at-one form (1 − p)^{k−1} p.
    Geometric,
}

/// w₁·f(k | a) + (1 − w₁)·f(k | b).
pub fn mixture2_pmf(kind: MixtureKind, k: u64, a: f64, b: f64, w1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&w1) {
        return Err(Error::Domain(format!("mixture weight must lie in [0, 1], got {w1}")));
    }
    let f = |p: f64| -> Result<f64> {
        match kind {
            MixtureKind::Poisson => {
                if !(p > 0.0) || !p.is_finite() {
                    return Err(Error::Domain(format!("Poisson rate must be positive, got {p}")));
                }
                let k = k as f64;
                Ok((k * p.ln() - p - lgamma(k + 1.0)).exp())
            }
            MixtureKind::Geometric => {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::Domain(format!("geometric p must lie in (0, 1], got {p}")));
                }
                if k == 0 {
                    return Err(Error::Domain("start-at-one geometric needs k ≥ 1".into()));
                }
                Ok(if p == 1.0 {
                    if k == 1 { 1.0 } else { 0.0 }
                } else {
                    ((k - 1) as f64 * (-p).ln_1p()).exp() * p
                })
            }
        }
    };
    Ok(w1 * f(a)? + (1.0 - w1) * f(b)?)
}
