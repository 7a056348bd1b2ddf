use crate::distributions::Sample;
use crate::{Error, Result};

/// Kolmogorov–Smirnov distance between the empirical CDF of `sample` and
/// `cdf`, taking both one-sided gaps at every order statistic.
pub fn ks_statistic(sample: &Sample, cdf: impl Fn(f64) -> f64) -> f64 {
    let sorted = sample.sorted_values();
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let i = i as f64 + 1.0;
        d = d.max((i / n - f).abs()).max(((i - 1.0) / n - f).abs());
    }
    d.clamp(0.0, 1.0)
}

/// Anderson–Darling statistic in its computational form over the
/// ascending order statistics. Fails when the CDF hits 0 or 1 at a sample
/// point, where the statistic diverges.
pub fn ad_statistic(sample: &Sample, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    let sorted = sample.sorted_values();
    let f: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    if let Some(pos) = f.iter().position(|&v| !(v > 0.0 && v < 1.0)) {
        return Err(Error::Numerical(format!(
            "Anderson–Darling undefined: F({}) = {}",
            sorted[pos], f[pos]
        )));
    }
    let n = f.len();
    let mut s = 0.0;
    for j in 0..n {
        let w = (2 * j + 1) as f64;
        s += w * (f[j].ln() + (-f[n - 1 - j]).ln_1p());
    }
    Ok(-(n as f64) - s / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RandomSource;
    use proptest::prelude::*;

    fn uniform_cdf(lo: f64, hi: f64) -> impl Fn(f64) -> f64 {
        move |x| ((x - lo) / (hi - lo)).clamp(0.0, 1.0)
    }

    #[test]
    fn ks_hand_cases() {
        let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!((ks_statistic(&s, uniform_cdf(0.0, 4.0)) - 0.25).abs() < 1e-12);
        let s = Sample::new(vec![5.0]).unwrap();
        assert_eq!(ks_statistic(&s, |_| 1.0), 1.0);
    }

    #[test]
    fn ks_at_quantiles() {
        let n = 50;
        let v: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        let s = Sample::new(v).unwrap();
        assert!(ks_statistic(&s, uniform_cdf(0.0, 1.0)) <= 1.0 / (n + 1) as f64 + 1e-12);
    }

    #[test]
    fn ad_hand_cases() {
        let s = Sample::new(vec![0.5]).unwrap();
        assert!((ad_statistic(&s, uniform_cdf(0.0, 1.0)).unwrap() - 0.386294).abs() < 1e-6);
        let s = Sample::new(vec![0.75, 0.25]).unwrap();
        assert!((ad_statistic(&s, uniform_cdf(0.0, 1.0)).unwrap() - 0.249341).abs() < 1e-6);
        let s = Sample::new(vec![1.0]).unwrap();
        assert!(ad_statistic(&s, uniform_cdf(0.0, 1.0)).is_err());
    }

    // n ∫ (F_n − F)² / (F(1 − F)) dF for uniform F, by Simpson on each piece
    // between order statistics. F_n is 0 on the first piece and 1 on the
    // last, so the integrand stays bounded at both ends.
    fn ad_by_quadrature(points: &[f64]) -> f64 {
        let mut knots = vec![0.0];
        knots.extend(points);
        knots.sort_by(f64::total_cmp);
        knots.push(1.0);
        let n = points.len() as f64;
        let mut total = 0.0;
        for (i, w) in knots.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let c = i as f64 / n;
            let f = |t: f64| if t <= 0.0 || t >= 1.0 { (c - t).abs() } else { (c - t).powi(2) / (t * (1.0 - t)) };
            let m = 2_000;
            let h = (b - a) / (2 * m) as f64;
            let mut acc = f(a) + f(b);
            for k in 1..2 * m {
                acc += if k % 2 == 1 { 4.0 } else { 2.0 } * f(a + k as f64 * h);
            }
            total += acc * h / 3.0;
        }
        n * total
    }

    #[test]
    fn ad_matches_integral_definition() {
        let mut rng = RandomSource::new(17);
        for n in 1..=5 {
            for _ in 0..20 {
                let v: Vec<f64> = (0..n).map(|_| 0.02 + 0.96 * rng.uniform()).collect();
                let s = Sample::new(v.clone()).unwrap();
                let a = ad_statistic(&s, uniform_cdf(0.0, 1.0)).unwrap();
                let q = ad_by_quadrature(&v);
                assert!((a - q).abs() < 1e-3, "n={n}: {a} vs {q}");
            }
        }
    }

    proptest! {
        #[test]
        fn ks_is_bounded(v in proptest::collection::vec(-5.0f64..5.0, 1..40)) {
            let s = Sample::new(v).unwrap();
            let d = ks_statistic(&s, |x| 1.0 / (1.0 + (-x).exp()));
            prop_assert!((0.0..=1.0).contains(&d));
        }
    }
}
