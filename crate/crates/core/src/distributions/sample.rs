use crate::{Error, Result};

/// An observed sample `x₁, …, x_n`, kept in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    is_discrete: bool,
}

impl Sample {
    /// Build a sample, marking it discrete when every value is an integer.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        let is_discrete = values.iter().all(|v| v.fract() == 0.0);
        Ok(Self { values, is_discrete })
    }

    /// Build a sample that must be integer valued.
    pub fn discrete(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        if let Some(v) = values.iter().find(|v| v.fract() != 0.0) {
            return Err(Error::Support(format!("discrete sample contains non-integer value {v}")));
        }
        Ok(Self { values, is_discrete: true })
    }

    /// Build a sample that is treated as continuous even if its values happen
    /// to be integers.
    pub fn continuous(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        Ok(Self { values, is_discrete: false })
    }

    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        Self::discrete(counts.iter().map(|&c| c as f64).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: samples hold at least one value.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.is_discrete
    }

    /// True when every value is an integer, whatever the discreteness flag.
    pub fn is_integer_valued(&self) -> bool {
        self.is_discrete || self.values.iter().all(|v| v.fract() == 0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Biased (divide by n) variance.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / self.values.len() as f64
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Empty("sample has no values".into()));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("sample contains non-finite value {v}")));
    }
    Ok(())
}

/// Distinct sample values with multiplicities. Likelihood sums over heavy
/// tied data (term counts) reduce to a few hundred terms this way.
#[derive(Debug, Clone)]
pub(crate) struct WeightedView {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedView {
    pub fn new(sample: &Sample) -> Self {
        let sorted = sample.sorted_values();
        let mut values = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for v in sorted {
            if values.last() == Some(&v) {
                *weights.last_mut().unwrap() += 1.0;
            } else {
                values.push(v);
                weights.push(1.0);
            }
        }
        Self { values, weights }
    }

    pub fn n(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn weighted_sum(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.values.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn weighted_mean(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.weighted_sum(f) / self.n()
    }
}
