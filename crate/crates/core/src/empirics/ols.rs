use super::histogram::{HistogramSeries, SeriesKind};
use crate::{Error, Result};

/// Least-squares line y = a + b·x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OlsFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
}

pub fn ols_fit(points: &[(f64, f64)]) -> Result<OlsFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateSample(format!("OLS needs two points, got {}", points.len())));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateSample("OLS with all x equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(OlsFit { intercept, slope, r_squared })
}

/// α̂ = −slope of OLS on (ln x, ln y), plus `correction`. Without an
/// explicit correction, ECCDF series get +1 (the ECCDF of x^{−α} decays as
/// x^{−(α−1)}) and other series 0.
pub fn loglog_exponent_estimate(series: &HistogramSeries, correction: Option<f64>) -> Result<f64> {
    if let Some(&(x, y)) = series.points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::Domain(format!("log-log fit needs positive points, got ({x}, {y})")));
    }
    let logs: Vec<(f64, f64)> = series.points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let fit = ols_fit(&logs)?;
    let correction = correction.unwrap_or(match series.kind {
        SeriesKind::Eccdf => 1.0,
        _ => 0.0,
    });
    Ok(-fit.slope + correction)
}
