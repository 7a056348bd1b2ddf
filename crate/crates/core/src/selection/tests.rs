use crate::distributions::{nested_pairs, FittedModel};
use crate::numerics::{chi_square_sf, std_normal_cdf};
use crate::{Error, Result};

/// Outcome of Vuong's non-nested test. `z` is `None` when the pointwise
/// differences have zero variance; `p` is then 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VuongResult {
    pub z: Option<f64>,
    pub p: f64,
    pub lr: f64,
}

impl VuongResult {
    pub fn is_indistinguishable(&self) -> bool {
        self.z.is_none()
    }
}

/// Vuong statistic from per-observation log-likelihood differences
/// `m_i = ℓ₁(x_i) − ℓ₂(x_i)`. Positive z favours the first model.
pub fn vuong_from_differences(m: &[f64]) -> VuongResult {
    let n = m.len() as f64;
    let lr: f64 = m.iter().sum();
    let mean = lr / n;
    let omega2 = m.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    let scale = m.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    let all_equal = m.iter().all(|&d| d == m[0]);
    if m.is_empty() || all_equal || omega2 <= (1e-15 * scale).powi(2) {
        return VuongResult { z: None, p: 1.0, lr };
    }
    let z = lr / (n.sqrt() * omega2.sqrt());
    let p = (2.0 * std_normal_cdf(-z.abs())).min(1.0);
    VuongResult { z: Some(z), p, lr }
}

pub fn vuong_nonnested_test(f1: &FittedModel, f2: &FittedModel) -> Result<VuongResult> {
    if f1.pointwise_loglik.len() != f2.pointwise_loglik.len() {
        return Err(Error::Usage(format!(
            "Vuong test needs fits on the same sample ({} vs {} observations)",
            f1.pointwise_loglik.len(),
            f2.pointwise_loglik.len()
        )));
    }
    let m: Vec<f64> =
        f1.pointwise_loglik.iter().zip(&f2.pointwise_loglik).map(|(a, b)| a - b).collect();
    Ok(vuong_from_differences(&m))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NestedLrResult {
    /// −2(L_restricted − L_full), clamped at 0.
    pub d: f64,
    pub df: usize,
    pub p: f64,
}

pub fn nested_lr_test(restricted: &FittedModel, full: &FittedModel) -> Result<NestedLrResult> {
    if !nested_pairs().contains(&(restricted.model, full.model)) {
        return Err(Error::Usage(format!(
            "{} is not a restricted case of {}",
            restricted.model.name(),
            full.model.name()
        )));
    }
    if restricted.n != full.n {
        return Err(Error::Usage("nested test needs fits on the same sample".into()));
    }
    let d = (-2.0 * (restricted.total_loglik - full.total_loglik)).max(0.0);
    let df = full.model.arity() - restricted.model.arity();
    Ok(NestedLrResult { d, df, p: chi_square_sf(d, df as f64) })
}

#[cfg(test)]
mod unit {
    use super::*;
    use crate::distributions::{ModelId, ParamVector};

    fn fake(model: ModelId, pointwise: Vec<f64>) -> FittedModel {
        FittedModel {
            model,
            params: ParamVector::new(vec![1.0; model.arity()]),
            n: pointwise.len(),
            total_loglik: pointwise.iter().sum(),
            pointwise_loglik: pointwise,
            aicc: None,
            converged: true,
            continuous_on_discrete: false,
            iterations: 0,
        }
    }

    #[test]
    fn identical_fits_are_indistinguishable() {
        let f = fake(ModelId::Poisson, vec![-1.0, -2.0, -0.5]);
        let r = vuong_nonnested_test(&f, &f).unwrap();
        assert!(r.is_indistinguishable());
        assert_eq!(r.lr, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn symmetric_differences() {
        let r = vuong_from_differences(&[1.0, -1.0, 1.0, -1.0]);
        assert_eq!(r.lr, 0.0);
        assert_eq!(r.z, Some(0.0));
        assert!((r.p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn antisymmetry_and_shift_invariance() {
        let a = fake(ModelId::Poisson, vec![-1.0, -2.5, -0.5, -3.0, -1.2]);
        let b = fake(ModelId::Gaussian, vec![-1.3, -2.0, -0.9, -2.1, -1.0]);
        let ab = vuong_nonnested_test(&a, &b).unwrap();
        let ba = vuong_nonnested_test(&b, &a).unwrap();
        assert!((ab.z.unwrap() + ba.z.unwrap()).abs() < 1e-12);
        assert!((ab.lr + ba.lr).abs() < 1e-12);
        assert!((ab.p - ba.p).abs() < 1e-12);
        let shift = |f: &FittedModel| fake(f.model, f.pointwise_loglik.iter().map(|v| v - 7.0).collect());
        let s = vuong_nonnested_test(&shift(&a), &shift(&b)).unwrap();
        assert!((s.z.unwrap() - ab.z.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn nested_values() {
        let r = fake(ModelId::Exponential, vec![-1.0, -1.0]);
        let f = fake(ModelId::Gamma, vec![-1.0, -1.0]);
        let t = nested_lr_test(&r, &f).unwrap();
        assert_eq!((t.d, t.df, t.p), (0.0, 1, 1.0));
        let f = fake(ModelId::Gamma, vec![-1.0, -1.0 + 3.841 / 2.0]);
        let t = nested_lr_test(&r, &f).unwrap();
        assert!((t.p - 0.05).abs() < 1e-4);
        // A restricted fit that is better (numerically) clamps to 0.
        let f = fake(ModelId::Gamma, vec![-1.5, -1.0]);
        assert_eq!(nested_lr_test(&r, &f).unwrap().d, 0.0);
        let g = fake(ModelId::Gaussian, vec![-1.0, -1.0]);
        assert!(matches!(nested_lr_test(&r, &g), Err(Error::Usage(_))));
        let gp = fake(ModelId::GeneralizedPareto, vec![-1.0, -1.0]);
        assert_eq!(nested_lr_test(&r, &gp).unwrap().df, 2);
    }
}
