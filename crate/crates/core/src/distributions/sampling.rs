use rand_distr::{Distribution, Gamma, Poisson};

use super::density::PreparedModel;
use super::model::{ModelId, ParamVector};
use super::sample::Sample;
use crate::numerics::{hurwitz_zeta_unchecked, RandomSource};
use crate::{Error, Result};

/// Entries of the exact power-law survival table before falling back to
/// zeta-based search.
const POWER_LAW_TABLE: usize = 4096;

/// Draw `n` independent variates. Deterministic for a given generator state.
pub fn random_sample(
    model: ModelId,
    params: &ParamVector,
    n: usize,
    rng: &mut RandomSource,
) -> Result<Sample> {
    model.validate(params)?;
    if n == 0 {
        return Err(Error::Empty("cannot draw an empty sample".into()));
    }
    let p = params.values();
    let values: Vec<f64> = match model {
        ModelId::Exponential => (0..n).map(|_| -p[0] * rng.open_uniform().ln()).collect(),
        ModelId::Gamma => {
            let g = Gamma::new(p[0], p[1]).map_err(|e| Error::Parameter(e.to_string()))?;
            (0..n).map(|_| g.sample(rng)).collect()
        }
        ModelId::Gaussian => {
            let sd = p[1].sqrt();
            (0..n).map(|_| p[0] + sd * rng.normal()).collect()
        }
        ModelId::Gev => (0..n)
            .map(|_| {
                let e = -rng.open_uniform().ln();
                if p[0].abs() < 1e-12 {
                    p[2] - p[1] * e.ln()
                } else {
                    p[2] + p[1] * (e.powf(-p[0]) - 1.0) / p[0]
                }
            })
            .collect(),
        ModelId::GeneralizedPareto => (0..n)
            .map(|_| {
                let u = rng.open_uniform();
                if p[0].abs() < 1e-12 {
                    p[2] - p[1] * u.ln()
                } else {
                    p[2] + p[1] * (u.powf(-p[0]) - 1.0) / p[0]
                }
            })
            .collect(),
        ModelId::Geometric => (0..n).map(|_| geometric0(p[0], rng)).collect(),
        ModelId::InverseGaussian => (0..n).map(|_| inverse_gaussian(p[0], p[1], rng)).collect(),
        ModelId::Logistic => (0..n)
            .map(|_| {
                let u = rng.open_uniform();
                p[0] + p[1] * (u / (1.0 - u)).ln()
            })
            .collect(),
        ModelId::LogNormal => {
            let sd = p[1].sqrt();
            (0..n).map(|_| (p[0] + sd * rng.normal()).exp()).collect()
        }
        ModelId::Nakagami => {
            let g = Gamma::new(p[0], p[1] / p[0]).map_err(|e| Error::Parameter(e.to_string()))?;
            (0..n).map(|_| g.sample(rng).sqrt()).collect()
        }
        ModelId::NegativeBinomial => {
            // Gamma–Poisson mixture with mean r·p/(1 − p).
            let g = Gamma::new(p[0], p[1] / (1.0 - p[1])).map_err(|e| Error::Parameter(e.to_string()))?;
            (0..n).map(|_| poisson(g.sample(rng), rng)).collect::<Result<_>>()?
        }
        ModelId::Poisson => (0..n).map(|_| poisson(p[0], rng)).collect::<Result<_>>()?,
        ModelId::PowerLaw => {
            let sampler = PowerLawSampler::new(p[0], p[1]);
            (0..n).map(|_| sampler.draw(rng)).collect()
        }
        ModelId::Rayleigh => (0..n).map(|_| p[0] * (-2.0 * rng.open_uniform().ln()).sqrt()).collect(),
        ModelId::Weibull => (0..n).map(|_| p[0] * (-rng.open_uniform().ln()).powf(1.0 / p[1])).collect(),
        ModelId::YuleSimon => (0..n)
            .map(|_| {
                // Geometric on {1, 2, ...} with success e^{−W}, W ~ Exp(rate p).
                let w = -rng.open_uniform().ln() / p[0];
                let ln_fail = (-(-w).exp_m1()).ln();
                let u = rng.open_uniform();
                1.0 + (u.ln() / ln_fail).floor()
            })
            .collect(),
    };
    if model.is_discrete() {
        Sample::discrete(values)
    } else {
        Sample::continuous(values)
    }
}

fn geometric0(p: f64, rng: &mut RandomSource) -> f64 {
    if p >= 1.0 {
        return 0.0;
    }
    (rng.open_uniform().ln() / (-p).ln_1p()).floor()
}

fn poisson(lambda: f64, rng: &mut RandomSource) -> Result<f64> {
    if lambda <= 0.0 {
        return Ok(0.0);
    }
    let d = Poisson::new(lambda).map_err(|e| Error::Parameter(e.to_string()))?;
    Ok(d.sample(rng))
}

// Michael, Schucany and Haas transformation.
fn inverse_gaussian(mu: f64, lambda: f64, rng: &mut RandomSource) -> f64 {
    let nu = rng.normal();
    let y = nu * nu;
    let x = mu + mu * mu * y / (2.0 * lambda)
        - mu / (2.0 * lambda) * (4.0 * mu * lambda * y + mu * mu * y * y).sqrt();
    if rng.uniform() <= mu / (mu + x) {
        x
    } else {
        mu * mu / x
    }
}

/// Inverse-survival sampling for the discrete power law: an exact table of
/// P(X ≥ x) near the cutoff, then bracketing and bisection on ζ(α, x) for
/// the tail.
struct PowerLawSampler {
    alpha: f64,
    xmin: f64,
    zeta_min: f64,
    /// survival[i] = P(X ≥ xmin + i)
    survival: Vec<f64>,
}

impl PowerLawSampler {
    fn new(alpha: f64, xmin: f64) -> Self {
        let zeta_min = hurwitz_zeta_unchecked(alpha, xmin);
        let mut survival = Vec::with_capacity(POWER_LAW_TABLE + 1);
        let mut s = 1.0;
        survival.push(s);
        let pm = PreparedModel::new(ModelId::PowerLaw, &ParamVector::new(vec![alpha, xmin]))
            .expect("validated parameters");
        for i in 0..POWER_LAW_TABLE {
            s -= pm.ln_pdf(xmin + i as f64).exp();
            survival.push(s.max(0.0));
        }
        // Resync the last entry against the exact value to bound drift.
        let exact = hurwitz_zeta_unchecked(alpha, xmin + POWER_LAW_TABLE as f64) / zeta_min;
        *survival.last_mut().unwrap() = exact;
        Self { alpha, xmin, zeta_min, survival }
    }

    fn tail(&self, x: f64) -> f64 {
        hurwitz_zeta_unchecked(self.alpha, x) / self.zeta_min
    }

    fn draw(&self, rng: &mut RandomSource) -> f64 {
        // u ∈ (0, 1]; answer is the largest x with P(X ≥ x) ≥ u.
        let u = 1.0 - rng.uniform();
        let last = *self.survival.last().unwrap();
        if u > last {
            // survival is nonincreasing; find the last index with value ≥ u.
            let idx = self.survival.partition_point(|&s| s >= u);
            return self.xmin + (idx - 1) as f64;
        }
        let mut lo = self.xmin + POWER_LAW_TABLE as f64;
        // Continuous approximation gives the scale of the answer.
        let guess = (lo * (last / u).powf(1.0 / (self.alpha - 1.0))).floor().max(lo + 1.0);
        let mut hi = guess;
        while self.tail(hi) >= u {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() || hi > 1e300 {
                return lo;
            }
        }
        // Invariant: tail(lo) ≥ u > tail(hi).
        if self.tail(guess) >= u {
            lo = lo.max(guess);
        }
        while hi - lo > 1.0 {
            let mid = (0.5 * (lo + hi)).floor();
            if self.tail(mid) >= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{mle_fit, FitOptions};

    fn draw(model: ModelId, p: &[f64], n: usize, seed: u64) -> Sample {
        random_sample(model, &p.to_vec().into(), n, &mut RandomSource::new(seed)).unwrap()
    }

    #[test]
    fn gaussian_mean() {
        let s = draw(ModelId::Gaussian, &[0.0, 1.0], 100_000, 1);
        assert!(s.mean().abs() < 0.02);
    }

    #[test]
    fn geometric_mean() {
        let s = draw(ModelId::Geometric, &[0.5], 100_000, 2);
        assert!((s.mean() - 1.0).abs() < 0.03);
        assert_eq!(s.min(), 0.0);
    }

    #[test]
    fn power_law_floor() {
        let s = draw(ModelId::PowerLaw, &[2.5, 1.0], 20_000, 3);
        assert_eq!(s.min(), 1.0);
        assert!(s.is_discrete());
    }

    #[test]
    fn deterministic_given_seed() {
        for model in ModelId::ALL {
            let p = default_params(model);
            assert_eq!(draw(model, &p, 50, 9), draw(model, &p, 50, 9));
        }
    }

    #[test]
    fn power_law_tail_follows_survival() {
        // Draws past the table must still match the exact survival.
        let s = draw(ModelId::PowerLaw, &[1.8, 1.0], 200_000, 4);
        let pm = PreparedModel::new(ModelId::PowerLaw, &ParamVector::new(vec![1.8, 1.0])).unwrap();
        for x in [10.0, 1_000.0, 10_000.0, 100_000.0] {
            let emp = s.values().iter().filter(|&&v| v > x).count() as f64 / 200_000.0;
            let exact = 1.0 - pm.cdf(x);
            let se = (exact * (1.0 - exact) / 200_000.0).sqrt();
            assert!((emp - exact).abs() < 5.0 * se + 1e-6, "x={x}: {emp} vs {exact}");
        }
    }

    fn default_params(model: ModelId) -> Vec<f64> {
        match model {
            ModelId::Exponential => vec![2.0],
            ModelId::Gamma => vec![2.5, 1.5],
            ModelId::Gaussian => vec![1.0, 4.0],
            ModelId::Gev => vec![0.2, 1.5, 3.0],
            ModelId::GeneralizedPareto => vec![0.3, 2.0, 0.0],
            ModelId::Geometric => vec![0.3],
            ModelId::InverseGaussian => vec![2.0, 5.0],
            ModelId::Logistic => vec![1.0, 2.0],
            ModelId::LogNormal => vec![0.5, 0.6],
            ModelId::Nakagami => vec![1.5, 3.0],
            ModelId::NegativeBinomial => vec![3.0, 0.6],
            ModelId::Poisson => vec![4.0],
            ModelId::PowerLaw => vec![2.5, 1.0],
            ModelId::Rayleigh => vec![2.0],
            ModelId::Weibull => vec![2.0, 1.5],
            ModelId::YuleSimon => vec![1.5],
        }
    }

    // KS distance between the sample and the model CDF, with discrete
    // models compared at every support point.
    fn ks(model: ModelId, p: &[f64], s: &Sample) -> f64 {
        let pm = PreparedModel::new(model, &p.to_vec().into()).unwrap();
        let v = s.sorted_values();
        let n = v.len() as f64;
        let mut d: f64 = 0.0;
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            let f = pm.cdf(v[i]);
            d = d.max((j as f64 / n - f).abs());
            if !model.is_discrete() {
                d = d.max((i as f64 / n - f).abs());
            }
            i = j;
        }
        d
    }

    #[test]
    fn empirical_cdf_matches_model() {
        for model in ModelId::ALL {
            let p = default_params(model);
            let s = draw(model, &p, 20_000, 5);
            let d = ks(model, &p, &s);
            // 1.95 / √n is the 0.1 % critical value of the KS statistic.
            assert!(d < 1.95 / (20_000f64).sqrt(), "{model:?}: D = {d}");
        }
    }

    #[test]
    fn sampling_round_trip_recovers_parameters() {
        for model in ModelId::ALL {
            let p = default_params(model);
            let s = draw(model, &p, 100_000, 6);
            let f = mle_fit(model, &s, &FitOptions::default()).unwrap();
            assert!(f.converged, "{model:?}");
            let tol = if matches!(model, ModelId::Gev | ModelId::GeneralizedPareto) { 0.10 } else { 0.05 };
            for (i, (&truth, &est)) in p.iter().zip(f.params.values()).enumerate() {
                if model == ModelId::GeneralizedPareto && i == 2 {
                    // Location is the sample minimum; compare on the scale of σ.
                    assert!((est - truth).abs() < 0.01 * p[1], "{model:?} θ: {est}");
                    continue;
                }
                assert!(
                    (est - truth).abs() <= tol * truth.abs(),
                    "{model:?} param {i}: {est} vs {truth}"
                );
            }
        }
    }
}
