use std::f64::consts::PI;

use super::model::{ModelId, ParamVector};
use super::sample::Sample;
use crate::numerics::{
    beta_inc, gamma_p, gamma_q, hurwitz_zeta_unchecked, lgamma, ln_beta, ln_std_normal_cdf,
    std_normal_cdf,
};
use crate::Result;

const SHAPE_ZERO: f64 = 1e-12;

/// A model with its parameters validated and the per-parameter constants of
/// the log density precomputed, so repeated evaluation touches only `x`.
#[derive(Debug, Clone)]
pub struct PreparedModel {
    model: ModelId,
    p: [f64; 3],
    c: [f64; 3],
}

impl PreparedModel {
    pub fn new(model: ModelId, params: &ParamVector) -> Result<Self> {
        model.validate(params)?;
        let mut p = [0.0; 3];
        p[..params.values().len()].copy_from_slice(params.values());
        let mut c = [0.0; 3];
        match model {
            ModelId::Exponential => c[0] = p[0].ln(),
            ModelId::Gamma => c[0] = -p[0] * p[1].ln() - lgamma(p[0]),
            ModelId::Gaussian | ModelId::LogNormal => c[0] = -0.5 * (2.0 * PI * p[1]).ln(),
            ModelId::Gev | ModelId::GeneralizedPareto | ModelId::Logistic => c[0] = p[1].ln(),
            ModelId::Geometric => {
                c[0] = p[0].ln();
                c[1] = (-p[0]).ln_1p();
            }
            ModelId::InverseGaussian => c[0] = 0.5 * (p[1] / (2.0 * PI)).ln(),
            ModelId::Nakagami => {
                c[0] = std::f64::consts::LN_2 + p[0] * (p[0] / p[1]).ln() - lgamma(p[0])
            }
            ModelId::NegativeBinomial => {
                c[0] = p[1].ln();
                c[1] = (-p[1]).ln_1p();
                c[2] = lgamma(p[0]);
            }
            ModelId::Poisson => c[0] = p[0].ln(),
            ModelId::PowerLaw => c[0] = hurwitz_zeta_unchecked(p[0], p[1]).ln(),
            ModelId::Rayleigh => {
                c[0] = p[0] * p[0];
                c[1] = c[0].ln();
            }
            ModelId::Weibull => c[0] = (p[1] / p[0]).ln(),
            ModelId::YuleSimon => c[0] = p[0].ln() + lgamma(p[0] + 1.0),
        }
        Ok(Self { model, p, c })
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    /// ln f(x | θ); −∞ outside the support.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let [p0, p1, p2] = self.p;
        let c = &self.c;
        if x.is_nan() {
            return f64::NAN;
        }
        if self.model.is_discrete() && (x.fract() != 0.0 || !x.is_finite()) {
            return f64::NEG_INFINITY;
        }
        match self.model {
            ModelId::Exponential => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    -c[0] - x / p0
                }
            }
            ModelId::Gamma => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else if x == 0.0 {
                    // Γ(a, b) density at the origin: 0, 1/b or unbounded.
                    if p0 > 1.0 {
                        f64::NEG_INFINITY
                    } else if p0 == 1.0 {
                        -p1.ln()
                    } else {
                        f64::INFINITY
                    }
                } else {
                    c[0] + (p0 - 1.0) * x.ln() - x / p1
                }
            }
            ModelId::Gaussian => c[0] - (x - p0) * (x - p0) / (2.0 * p1),
            ModelId::Gev => {
                let z = (x - p2) / p1;
                if p0.abs() < SHAPE_ZERO {
                    -c[0] - z - (-z).exp()
                } else {
                    let t = 1.0 + p0 * z;
                    if t <= 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        -c[0] - (1.0 + 1.0 / p0) * t.ln() - t.powf(-1.0 / p0)
                    }
                }
            }
            ModelId::GeneralizedPareto => {
                let z = (x - p2) / p1;
                if z < 0.0 {
                    f64::NEG_INFINITY
                } else if p0.abs() < SHAPE_ZERO {
                    -c[0] - z
                } else {
                    let t = 1.0 + p0 * z;
                    if t <= 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        -c[0] - (1.0 + 1.0 / p0) * t.ln()
                    }
                }
            }
            ModelId::Geometric => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else if p0 == 1.0 {
                    if x == 0.0 {
                        0.0
                    } else {
                        f64::NEG_INFINITY
                    }
                } else {
                    x * c[1] + c[0]
                }
            }
            ModelId::InverseGaussian => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    c[0] - 1.5 * x.ln() - p1 * (x - p0) * (x - p0) / (2.0 * p0 * p0 * x)
                }
            }
            ModelId::Logistic => {
                let z = ((x - p0) / p1).abs();
                -c[0] - z - 2.0 * (-z).exp().ln_1p()
            }
            ModelId::LogNormal => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    let l = x.ln();
                    c[0] - l - (l - p0) * (l - p0) / (2.0 * p1)
                }
            }
            ModelId::Nakagami => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    c[0] + (2.0 * p0 - 1.0) * x.ln() - p0 * x * x / p1
                }
            }
            ModelId::NegativeBinomial => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    lgamma(p0 + x) - lgamma(x + 1.0) - c[2] + x * c[0] + p0 * c[1]
                }
            }
            ModelId::Poisson => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    x * c[0] - p0 - lgamma(x + 1.0)
                }
            }
            ModelId::PowerLaw => {
                if x < p1 {
                    f64::NEG_INFINITY
                } else {
                    -p0 * x.ln() - c[0]
                }
            }
            ModelId::Rayleigh => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    x.ln() - c[1] - x * x / (2.0 * c[0])
                }
            }
            ModelId::Weibull => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else if x == 0.0 {
                    if p1 > 1.0 {
                        f64::NEG_INFINITY
                    } else if p1 == 1.0 {
                        c[0]
                    } else {
                        f64::INFINITY
                    }
                } else {
                    let z = x / p0;
                    c[0] + (p1 - 1.0) * z.ln() - z.powf(p1)
                }
            }
            ModelId::YuleSimon => {
                if x < 1.0 {
                    f64::NEG_INFINITY
                } else {
                    c[0] + lgamma(x) - lgamma(x + p0 + 1.0)
                }
            }
        }
    }

    /// F(x | θ) = P(X ≤ x).
    pub fn cdf(&self, x: f64) -> f64 {
        let [p0, p1, p2] = self.p;
        if x.is_nan() {
            return f64::NAN;
        }
        if x == f64::INFINITY {
            return 1.0;
        }
        if x == f64::NEG_INFINITY {
            return 0.0;
        }
        match self.model {
            ModelId::Exponential => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x / p0).exp_m1()
                }
            }
            ModelId::Gamma => gamma_p(p0, x.max(0.0) / p1),
            ModelId::Gaussian => std_normal_cdf((x - p0) / p1.sqrt()),
            ModelId::Gev => {
                let z = (x - p2) / p1;
                if p0.abs() < SHAPE_ZERO {
                    (-(-z).exp()).exp()
                } else {
                    let t = 1.0 + p0 * z;
                    if t <= 0.0 {
                        if p0 > 0.0 {
                            0.0
                        } else {
                            1.0
                        }
                    } else {
                        (-t.powf(-1.0 / p0)).exp()
                    }
                }
            }
            ModelId::GeneralizedPareto => {
                let z = (x - p2) / p1;
                if z <= 0.0 {
                    0.0
                } else if p0.abs() < SHAPE_ZERO {
                    -(-z).exp_m1()
                } else {
                    let t = 1.0 + p0 * z;
                    if t <= 0.0 {
                        1.0
                    } else {
                        -((-1.0 / p0) * t.ln()).exp_m1()
                    }
                }
            }
            ModelId::Geometric => {
                if x < 0.0 {
                    0.0
                } else {
                    -((x.floor() + 1.0) * self.c[1]).exp_m1()
                }
            }
            ModelId::InverseGaussian => {
                if x <= 0.0 {
                    0.0
                } else {
                    let s = (p1 / x).sqrt();
                    let a = std_normal_cdf(s * (x / p0 - 1.0));
                    let b = (2.0 * p1 / p0 + ln_std_normal_cdf(-s * (x / p0 + 1.0))).exp();
                    (a + b).min(1.0)
                }
            }
            ModelId::Logistic => 1.0 / (1.0 + (-(x - p0) / p1).exp()),
            ModelId::LogNormal => {
                if x <= 0.0 {
                    0.0
                } else {
                    std_normal_cdf((x.ln() - p0) / p1.sqrt())
                }
            }
            ModelId::Nakagami => {
                if x <= 0.0 {
                    0.0
                } else {
                    gamma_p(p0, p0 * x * x / p1)
                }
            }
            ModelId::NegativeBinomial => {
                if x < 0.0 {
                    0.0
                } else {
                    beta_inc(p0, x.floor() + 1.0, 1.0 - p1)
                }
            }
            ModelId::Poisson => {
                if x < 0.0 {
                    0.0
                } else {
                    gamma_q(x.floor() + 1.0, p0)
                }
            }
            ModelId::PowerLaw => {
                if x < p1 {
                    0.0
                } else {
                    let tail = hurwitz_zeta_unchecked(p0, x.floor() + 1.0).ln() - self.c[0];
                    -tail.exp_m1()
                }
            }
            ModelId::Rayleigh => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x * x / (2.0 * self.c[0])).exp_m1()
                }
            }
            ModelId::Weibull => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-(x / p0).powf(p1)).exp_m1()
                }
            }
            ModelId::YuleSimon => {
                if x < 1.0 {
                    0.0
                } else {
                    // Survival P(X > k) = k · B(k, p + 1).
                    let k = x.floor();
                    -(k.ln() + ln_beta(k, p0 + 1.0)).exp_m1()
                }
            }
        }
    }
}

/// ln f(x | θ) for one observation; −∞ when `x` is outside the support.
pub fn log_density(model: ModelId, params: &ParamVector, x: f64) -> Result<f64> {
    Ok(PreparedModel::new(model, params)?.ln_pdf(x))
}

/// F(x | θ).
pub fn cdf(model: ModelId, params: &ParamVector, x: f64) -> Result<f64> {
    Ok(PreparedModel::new(model, params)?.cdf(x))
}

/// Total and pointwise log-likelihood; the total is −∞ if any observation
/// falls outside the support.
pub fn log_likelihood(
    model: ModelId,
    params: &ParamVector,
    sample: &Sample,
) -> Result<(f64, Vec<f64>)> {
    let prepared = PreparedModel::new(model, params)?;
    let pointwise: Vec<f64> = sample.values().iter().map(|&x| prepared.ln_pdf(x)).collect();
    Ok((pointwise.iter().sum(), pointwise))
}
