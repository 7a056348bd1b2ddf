use std::fmt;
use std::str::FromStr;

use crate::distributions::FittedModel;
use crate::{Error, Result};

/// Penalised-likelihood criterion; lower is better for every variant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum AiccVariant {
    /// −2L + 2k + 2k(k+1)/(n−k−1)
    #[default]
    HurvichTsai,
    /// −2L + k ln n
    BicStyle,
    /// −2L + 2φk ln ln n
    HannanQuinn { phi: f64 },
}

impl fmt::Display for AiccVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AiccVariant::HurvichTsai => f.write_str("default"),
            AiccVariant::BicStyle => f.write_str("bic_style"),
            AiccVariant::HannanQuinn { phi } => write!(f, "hq:{phi}"),
        }
    }
}

impl FromStr for AiccVariant {
    type Err = Error;

    /// `default`, `bic_style`, `hq` (φ = 2) or `hq:<φ>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "default" | "aicc" | "hurvich_tsai" => Ok(AiccVariant::HurvichTsai),
            "bic_style" | "bic" => Ok(AiccVariant::BicStyle),
            "hq" => Ok(AiccVariant::HannanQuinn { phi: 2.0 }),
            _ => {
                if let Some(phi) = s.strip_prefix("hq:") {
                    let phi: f64 = phi
                        .parse()
                        .map_err(|_| Error::Config(format!("bad φ in criterion '{s}'")))?;
                    if !(phi > 1.0) {
                        return Err(Error::Config(format!("φ must exceed 1, got {phi}")));
                    }
                    Ok(AiccVariant::HannanQuinn { phi })
                } else {
                    Err(Error::Config(format!("unknown criterion '{s}'")))
                }
            }
        }
    }
}

/// Criterion value from a log-likelihood, parameter count and sample size.
pub fn aicc_value(loglik: f64, k: usize, n: usize, variant: AiccVariant) -> Result<f64> {
    let (kf, nf) = (k as f64, n as f64);
    match variant {
        AiccVariant::HurvichTsai => {
            if nf <= kf + 1.0 {
                return Err(Error::DegenerateSample(format!(
                    "AICc correction undefined for n = {n}, k = {k}"
                )));
            }
            Ok(-2.0 * loglik + 2.0 * kf + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0))
        }
        AiccVariant::BicStyle => {
            if n == 0 {
                return Err(Error::DegenerateSample("BIC needs n > 0".into()));
            }
            Ok(-2.0 * loglik + kf * nf.ln())
        }
        AiccVariant::HannanQuinn { phi } => {
            if nf <= std::f64::consts::E {
                return Err(Error::DegenerateSample(format!("ln ln n undefined for n = {n}")));
            }
            Ok(-2.0 * loglik + 2.0 * phi * kf * nf.ln().ln())
        }
    }
}

pub fn aicc(fitted: &FittedModel, variant: AiccVariant) -> Result<f64> {
    aicc_value(fitted.total_loglik, fitted.model.arity(), fitted.n, variant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_formula() {
        assert!((aicc_value(0.0, 1, 10, AiccVariant::HurvichTsai).unwrap() - 2.5).abs() < 1e-12);
        let big = aicc_value(0.0, 1, 1_000_000_000, AiccVariant::HurvichTsai).unwrap();
        assert!((big - 2.0).abs() < 1e-8);
        let k1 = aicc_value(-50.0, 1, 100, AiccVariant::HurvichTsai).unwrap();
        let k3 = aicc_value(-50.0, 3, 100, AiccVariant::HurvichTsai).unwrap();
        assert!(k1 < k3);
        assert!(aicc_value(0.0, 3, 4, AiccVariant::HurvichTsai).is_err());
    }

    #[test]
    fn other_variants() {
        let b = aicc_value(-10.0, 2, 100, AiccVariant::BicStyle).unwrap();
        assert!((b - (20.0 + 2.0 * 100f64.ln())).abs() < 1e-12);
        let h = aicc_value(-10.0, 2, 100, AiccVariant::HannanQuinn { phi: 2.0 }).unwrap();
        assert!((h - (20.0 + 8.0 * 100f64.ln().ln())).abs() < 1e-12);
    }

    #[test]
    fn parse_variants() {
        assert_eq!("default".parse::<AiccVariant>().unwrap(), AiccVariant::HurvichTsai);
        assert_eq!("hq:3".parse::<AiccVariant>().unwrap(), AiccVariant::HannanQuinn { phi: 3.0 });
        assert!("hq:0.5".parse::<AiccVariant>().is_err());
        assert!("mdl".parse::<AiccVariant>().is_err());
    }
}
