use std::fmt::{self, Write as _};

use crate::distributions::Sample;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    RawNormalized,
    Eccdf,
    LogBinned,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::RawNormalized => "raw_normalized",
            SeriesKind::Eccdf => "eccdf",
            SeriesKind::LogBinned => "log_binned",
        })
    }
}

/// Points (x, y) with strictly increasing x.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramSeries {
    pub points: Vec<(f64, f64)>,
    pub kind: SeriesKind,
    pub bin_base: Option<u64>,
    /// Log bins with no observations, left out of `points`.
    pub dropped_empty_bins: usize,
    pub warnings: Vec<String>,
}

impl HistogramSeries {
    fn new(points: Vec<(f64, f64)>, kind: SeriesKind) -> Self {
        Self { points, kind, bin_base: None, dropped_empty_bins: 0, warnings: Vec::new() }
    }

    /// Two-column TSV. With `gnuplot`, `#` comment lines describe the series.
    pub fn to_tsv(&self, gnuplot: bool) -> String {
        let mut out = String::new();
        if gnuplot {
            let _ = writeln!(out, "# kind: {}", self.kind);
            if let Some(c) = self.bin_base {
                let _ = writeln!(out, "# bin base: {c}");
            }
            if self.dropped_empty_bins > 0 {
                let _ = writeln!(out, "# empty bins dropped: {}", self.dropped_empty_bins);
            }
            for w in &self.warnings {
                let _ = writeln!(out, "# warning: {w}");
            }
            out.push_str("# x\ty\n");
        }
        for (x, y) in &self.points {
            let _ = writeln!(out, "{x}\t{y}");
        }
        out
    }
}

/// Distinct values ascending with their counts.
fn value_counts(sample: &Sample) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in sample.sorted_values() {
        match out.last_mut() {
            Some((x, c)) if *x == v => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// One point per distinct value, y = count / n.
pub fn raw_histogram(sample: &Sample) -> Result<HistogramSeries> {
    if !sample.is_integer_valued() {
        return Err(Error::Support("raw histogram needs integer data".into()));
    }
    let n = sample.len() as f64;
    let points = value_counts(sample).into_iter().map(|(x, c)| (x, c as f64 / n)).collect();
    Ok(HistogramSeries::new(points, SeriesKind::RawNormalized))
}

/// Empirical Pr(X ≥ x) at every distinct value.
pub fn eccdf(sample: &Sample) -> HistogramSeries {
    let n = sample.len();
    let mut remaining = n;
    let mut points = Vec::new();
    for (x, c) in value_counts(sample) {
        points.push((x, remaining as f64 / n as f64));
        remaining -= c;
    }
    HistogramSeries::new(points, SeriesKind::Eccdf)
}

/// Counts in bins [cⁱ, c^{i+1} − 1] for i = 0..=k, each divided by n times
/// the bin width and placed at the geometric midpoint of the bin.
pub fn log_binned_histogram(sample: &Sample, base: u64, k: u32) -> Result<HistogramSeries> {
    if base < 2 {
        return Err(Error::Parameter(format!("log-bin base must be at least 2, got {base}")));
    }
    if !sample.is_integer_valued() || sample.min() < 1.0 {
        return Err(Error::Support("log binning needs positive integer data".into()));
    }
    let c = base as f64;
    let edges: Vec<(f64, f64)> =
        (0..=k).map(|i| (c.powi(i as i32), c.powi(i as i32 + 1) - 1.0)).collect();
    let mut counts = vec![0usize; edges.len()];
    let mut uncovered = 0usize;
    for &v in sample.values() {
        // Bins are contiguous, so the index is ⌊log_c v⌋, checked against the
        // edges to stay exact at powers of c.
        let mut i = (v.ln() / c.ln()).floor() as usize;
        while i > 0 && v < edges.get(i).map_or(f64::INFINITY, |e| e.0) {
            i -= 1;
        }
        while i + 1 < edges.len() && v > edges[i].1 {
            i += 1;
        }
        if i < edges.len() && v >= edges[i].0 && v <= edges[i].1 {
            counts[i] += 1;
        } else {
            uncovered += 1;
        }
    }
    let n = sample.len() as f64;
    let mut points = Vec::new();
    let mut dropped = 0;
    for ((lo, hi), &count) in edges.iter().zip(&counts) {
        if count == 0 {
            dropped += 1;
            continue;
        }
        let width = hi - lo + 1.0;
        points.push(((lo * hi).sqrt(), count as f64 / (n * width)));
    }
    let mut series = HistogramSeries::new(points, SeriesKind::LogBinned);
    series.bin_base = Some(base);
    series.dropped_empty_bins = dropped;
    if uncovered > 0 {
        series.warnings.push(format!(
            "{uncovered} observations above the last bin edge {}",
            edges.last().unwrap().1
        ));
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{random_sample, ModelId};
    use crate::numerics::RandomSource;
    use proptest::prelude::*;

    fn s(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn raw_examples() {
        let h = raw_histogram(&s(&[1.0, 1.0, 2.0])).unwrap();
        assert_eq!(h.points, vec![(1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0)]);
        assert_eq!(raw_histogram(&s(&[5.0])).unwrap().points, vec![(5.0, 1.0)]);
        let mut rng = RandomSource::new(1);
        let p = random_sample(ModelId::PowerLaw, &[2.5, 1.0].into(), 20_000, &mut rng).unwrap();
        let total: f64 = raw_histogram(&p).unwrap().points.iter().map(|p| p.1).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(raw_histogram(&s(&[1.5])).is_err());
    }

    #[test]
    fn eccdf_examples() {
        assert_eq!(eccdf(&s(&[1.0, 1.0, 2.0])).points, vec![(1.0, 1.0), (2.0, 1.0 / 3.0)]);
        assert_eq!(eccdf(&s(&[7.0])).points, vec![(7.0, 1.0)]);
        let e = eccdf(&s(&[3.0, 1.0, 9.0, 9.0, 2.0]));
        assert_eq!(*e.points.last().unwrap(), (9.0, 0.4));
    }

    #[test]
    fn log_bins_examples() {
        let h = log_binned_histogram(&s(&[1.0, 1.0, 2.0, 3.0]), 2, 1).unwrap();
        // Midpoints √(1·1) and √(2·3).
        assert_eq!(h.points.len(), 2);
        assert_eq!(h.points[0], (1.0, 0.5));
        assert!((h.points[1].0 - 6f64.sqrt()).abs() < 1e-12);
        assert!((h.points[1].1 - 0.25).abs() < 1e-12);
        assert!(h.warnings.is_empty());
        let h = log_binned_histogram(&s(&[1.0, 2.0, 4.0, 7.0, 8.0]), 2, 2).unwrap();
        assert_eq!(h.warnings.len(), 1);
        assert!(log_binned_histogram(&s(&[0.0, 1.0]), 2, 2).is_err());
    }

    #[test]
    fn uniform_mass_gives_flat_density() {
        let k = 5;
        let top = 2u64.pow(k + 1) - 1;
        let v: Vec<f64> = (1..=top).map(|x| x as f64).collect();
        let h = log_binned_histogram(&s(&v), 2, k).unwrap();
        let y0 = h.points[0].1;
        for p in &h.points {
            assert!((p.1 - y0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn eccdf_complements_cdf(v in proptest::collection::vec(0u32..30, 1..60)) {
            let sample = Sample::new(v.iter().map(|&x| x as f64).collect()).unwrap();
            let e = eccdf(&sample);
            let n = v.len() as f64;
            for (x, y) in &e.points {
                let below = v.iter().filter(|&&u| (u as f64) < *x).count() as f64 / n;
                prop_assert!((y + below - 1.0).abs() < 1e-12);
            }
            for w in e.points.windows(2) {
                prop_assert!(w[0].0 < w[1].0 && w[0].1 >= w[1].1);
            }
        }

        #[test]
        fn log_bins_partition_their_range(v in proptest::collection::vec(1u32..3000, 1..80), base in 2u64..5) {
            let sample = Sample::new(v.iter().map(|&x| x as f64).collect()).unwrap();
            let k = 8;
            let h = log_binned_histogram(&sample, base, k).unwrap();
            let top = (base as f64).powi(k as i32 + 1) - 1.0;
            let covered = v.iter().filter(|&&x| (x as f64) <= top).count() as f64;
            // Undoing the width normalisation recovers every covered observation.
            let c = base as f64;
            let mut total = 0.0;
            for (x, y) in &h.points {
                let i = (0..=k).find(|&i| ((c.powi(i as i32) * (c.powi(i as i32 + 1) - 1.0)).sqrt() - x).abs() < 1e-9).unwrap();
                let width = c.powi(i as i32 + 1) - c.powi(i as i32);
                total += y * width * v.len() as f64;
            }
            prop_assert!((total - covered).abs() < 1e-6);
        }
    }
}
