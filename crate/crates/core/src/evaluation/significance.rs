use crate::numerics::student_t_two_tailed;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    pub t: f64,
    pub p: f64,
    pub df: f64,
}

impl TTest {
    pub fn significant(&self, alpha: f64) -> bool {
        self.p < alpha
    }
}

/// Two-tailed paired t-test on a − b.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTest> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::Usage(format!("paired t-test needs two equal-length series of at least 2, got {} and {}", a.len(), b.len())));
    }
    let n = a.len() as f64;
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    let scale = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if var <= (1e-15 * scale) * (1e-15 * scale) {
        return Err(Error::DegenerateSample("paired differences have zero variance; t-test undefined".into()));
    }
    let t = mean / (var.sqrt() / n.sqrt());
    Ok(TTest { t, p: student_t_two_tailed(t, n - 1.0), df: n - 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hand_case() {
        // Differences with mean 1 and sample standard deviation 1.
        let base = [0.0; 10];
        let s = 0.9f64.sqrt();
        let d: Vec<f64> = (0..10).map(|i| if i % 2 == 0 { 1.0 + s } else { 1.0 - s }).collect();
        let mean = d.iter().sum::<f64>() / 10.0;
        let sd = (d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 9.0).sqrt();
        assert!((mean - 1.0).abs() < 1e-12 && (sd - 1.0).abs() < 1e-12, "{mean} {sd}");
        let r = paired_t_test(&d, &base).unwrap();
        assert!((r.t - 10f64.sqrt()).abs() < 1e-9);
        assert!((r.p - 0.0115).abs() < 5e-4, "{}", r.p);
        assert!((r.p - 0.0115080).abs() < 1e-6, "{}", r.p);
    }

    #[test]
    fn symmetric_and_degenerate() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [2.0, 1.0, 4.0, 3.0];
        let r = paired_t_test(&a, &b).unwrap();
        assert_eq!(r.t, 0.0);
        assert!((r.p - 1.0).abs() < 1e-12);
        assert!(matches!(paired_t_test(&a, &a), Err(Error::DegenerateSample(_))));
        assert!(paired_t_test(&a, &b[..3]).is_err());
        let shifted: Vec<f64> = a.iter().enumerate().map(|(i, x)| x + 0.5 + 1e-3 * i as f64).collect();
        let s = paired_t_test(&shifted, &a).unwrap();
        assert!(s.t > 100.0 && s.p < 1e-4);
    }

    proptest! {
        #[test]
        fn antisymmetric(a in prop::collection::vec(0.0f64..1.0, 5), b in prop::collection::vec(0.0f64..1.0, 5)) {
            let (Ok(x), Ok(y)) = (paired_t_test(&a, &b), paired_t_test(&b, &a)) else { return Ok(()) };
            prop_assert!((x.t + y.t).abs() < 1e-12);
            prop_assert!((x.p - y.p).abs() < 1e-12);
        }
    }
}
