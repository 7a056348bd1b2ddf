use crate::numerics::RandomSource;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum SubsampleMethod {
    /// Shuffle, then keep a prefix.
    Simple,
    /// Simple sampling inside each stratum. Strata are the half-open value
    /// ranges cut at the given ascending boundaries.
    Stratified(Vec<f64>),
    /// Every ⌈1/fraction⌉-th element of a shuffled copy from a random start.
    Systematic,
}

fn take_count(len: usize, fraction: f64) -> usize {
    ((fraction * len as f64).round() as usize).clamp(1, len)
}

/// Draw a subsample holding about `fraction` of `values`.
pub fn subsample(
    values: &[f64],
    method: &SubsampleMethod,
    fraction: f64,
    rng: &mut RandomSource,
) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::Empty("nothing to subsample".into()));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Parameter(format!("subsample fraction must lie in (0, 1], got {fraction}")));
    }
    match method {
        SubsampleMethod::Simple => {
            let mut v = values.to_vec();
            rng.shuffle(&mut v);
            v.truncate(take_count(values.len(), fraction));
            Ok(v)
        }
        SubsampleMethod::Systematic => {
            let mut v = values.to_vec();
            rng.shuffle(&mut v);
            let step = (1.0 / fraction).ceil() as usize;
            let start = rng.below(step.min(v.len()));
            Ok(v.into_iter().skip(start).step_by(step).collect())
        }
        SubsampleMethod::Stratified(bounds) => {
            if bounds.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::Parameter("stratum boundaries must be strictly increasing".into()));
            }
            let mut strata: Vec<Vec<f64>> = vec![Vec::new(); bounds.len() + 1];
            for &v in values {
                strata[bounds.partition_point(|&b| b <= v)].push(v);
            }
            if let Some(i) = strata.iter().position(Vec::is_empty) {
                return Err(Error::Empty(format!("stratum {i} has no elements")));
            }
            let mut out = Vec::new();
            for mut s in strata {
                rng.shuffle(&mut s);
                let k = take_count(s.len(), fraction);
                out.extend_from_slice(&s[..k]);
            }
            Ok(out)
        }
    }
}
