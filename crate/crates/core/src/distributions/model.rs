use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Identifier of a parametric model.
///
/// Variant order is the column order of a Vuong table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelId {
    Exponential,
    Gamma,
    Geometric,
    Gev,
    GeneralizedPareto,
    InverseGaussian,
    Logistic,
    LogNormal,
    Nakagami,
    NegativeBinomial,
    Gaussian,
    Poisson,
    PowerLaw,
    Rayleigh,
    Weibull,
    YuleSimon,
}

/// Support class of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// {0, 1, 2, ...}
    NonNegativeIntegers,
    /// {1, 2, ...}
    PositiveIntegers,
    /// {x_min, x_min + 1, ...}
    IntegersFromCutoff,
    RealLine,
    NonNegativeReals,
    PositiveReals,
    /// Endpoints depend on the parameters (GEV, generalized Pareto).
    ParameterDependent,
}

impl ModelId {
    pub const ALL: [ModelId; 16] = [
        ModelId::Exponential,
        ModelId::Gamma,
        ModelId::Geometric,
        ModelId::Gev,
        ModelId::GeneralizedPareto,
        ModelId::InverseGaussian,
        ModelId::Logistic,
        ModelId::LogNormal,
        ModelId::Nakagami,
        ModelId::NegativeBinomial,
        ModelId::Gaussian,
        ModelId::Poisson,
        ModelId::PowerLaw,
        ModelId::Rayleigh,
        ModelId::Weibull,
        ModelId::YuleSimon,
    ];

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ModelId::Exponential => &["mu"],
            ModelId::Gamma => &["a", "b"],
            ModelId::Gaussian => &["mu", "sigma2"],
            ModelId::Gev => &["k", "sigma", "mu"],
            ModelId::GeneralizedPareto => &["k", "sigma", "theta"],
            ModelId::Geometric => &["p"],
            ModelId::InverseGaussian => &["mu", "lambda"],
            ModelId::Logistic => &["mu", "sigma"],
            ModelId::LogNormal => &["mu", "sigma2"],
            ModelId::Nakagami => &["mu", "omega"],
            ModelId::NegativeBinomial => &["r", "p"],
            ModelId::Poisson => &["lambda"],
            ModelId::PowerLaw => &["alpha", "xmin"],
            ModelId::Rayleigh => &["b"],
            ModelId::Weibull => &["a", "b"],
            ModelId::YuleSimon => &["p"],
        }
    }

    /// Number of parameters, including ones fixed from the sample (power-law
    /// cutoff, generalized-Pareto location).
    pub fn arity(self) -> usize {
        self.param_names().len()
    }

    pub fn support(self) -> Support {
        match self {
            ModelId::Geometric | ModelId::NegativeBinomial | ModelId::Poisson => {
                Support::NonNegativeIntegers
            }
            ModelId::YuleSimon => Support::PositiveIntegers,
            ModelId::PowerLaw => Support::IntegersFromCutoff,
            ModelId::Gaussian | ModelId::Logistic => Support::RealLine,
            ModelId::Exponential => Support::NonNegativeReals,
            ModelId::Gamma
            | ModelId::InverseGaussian
            | ModelId::LogNormal
            | ModelId::Nakagami
            | ModelId::Rayleigh
            | ModelId::Weibull => Support::PositiveReals,
            ModelId::Gev | ModelId::GeneralizedPareto => Support::ParameterDependent,
        }
    }

    pub fn is_discrete(self) -> bool {
        matches!(
            self.support(),
            Support::NonNegativeIntegers | Support::PositiveIntegers | Support::IntegersFromCutoff
        )
    }

    /// Column label used in Vuong tables.
    pub fn short_name(self) -> &'static str {
        match self {
            ModelId::Exponential => "Exp",
            ModelId::Gamma => "Gamma",
            ModelId::Geometric => "Geo",
            ModelId::Gev => "Gev",
            ModelId::GeneralizedPareto => "GP",
            ModelId::InverseGaussian => "IGauss",
            ModelId::Logistic => "Log",
            ModelId::LogNormal => "Logn",
            ModelId::Nakagami => "Naka",
            ModelId::NegativeBinomial => "NBin",
            ModelId::Gaussian => "Gauss",
            ModelId::Poisson => "Pois",
            ModelId::PowerLaw => "P-law",
            ModelId::Rayleigh => "Rayl",
            ModelId::Weibull => "Weib",
            ModelId::YuleSimon => "Yule",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Exponential => "Exponential",
            ModelId::Gamma => "Gamma",
            ModelId::Geometric => "Geometric",
            ModelId::Gev => "GEV",
            ModelId::GeneralizedPareto => "GeneralizedPareto",
            ModelId::InverseGaussian => "InverseGaussian",
            ModelId::Logistic => "Logistic",
            ModelId::LogNormal => "LogNormal",
            ModelId::Nakagami => "Nakagami",
            ModelId::NegativeBinomial => "NegativeBinomial",
            ModelId::Gaussian => "Gaussian",
            ModelId::Poisson => "Poisson",
            ModelId::PowerLaw => "PowerLaw",
            ModelId::Rayleigh => "Rayleigh",
            ModelId::Weibull => "Weibull",
            ModelId::YuleSimon => "YuleSimon",
        }
    }

    /// Check that `params` lies in the model's parameter domain.
    pub fn validate(self, params: &ParamVector) -> Result<()> {
        let p = params.values();
        if p.len() != self.arity() {
            return Err(Error::Parameter(format!(
                "{} takes {} parameters, got {}",
                self.name(),
                self.arity(),
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("{} parameters must be finite: {p:?}", self.name())));
        }
        let positive = |i: usize| p[i] > 0.0;
        let ok = match self {
            ModelId::Exponential
            | ModelId::Poisson
            | ModelId::Rayleigh
            | ModelId::YuleSimon => positive(0),
            ModelId::Gamma
            | ModelId::InverseGaussian
            | ModelId::Nakagami
            | ModelId::Weibull => positive(0) && positive(1),
            ModelId::Gaussian | ModelId::LogNormal | ModelId::Logistic => positive(1),
            ModelId::Gev | ModelId::GeneralizedPareto => positive(1),
            ModelId::Geometric => p[0] > 0.0 && p[0] <= 1.0,
            ModelId::NegativeBinomial => positive(0) && p[1] > 0.0 && p[1] < 1.0,
            ModelId::PowerLaw => p[0] > 1.0 && p[1] >= 1.0 && p[1].fract() == 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "{} parameters {:?} = {p:?} outside their domain",
                self.name(),
                self.param_names()
            )))
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        let id = match key.as_str() {
            "exp" | "exponential" => ModelId::Exponential,
            "gamma" => ModelId::Gamma,
            "geo" | "geometric" => ModelId::Geometric,
            "gev" | "generalizedextremevalue" => ModelId::Gev,
            "gp" | "gpd" | "generalizedpareto" => ModelId::GeneralizedPareto,
            "igauss" | "invgauss" | "inversegaussian" => ModelId::InverseGaussian,
            "log" | "logistic" => ModelId::Logistic,
            "logn" | "lognormal" => ModelId::LogNormal,
            "naka" | "nakagami" => ModelId::Nakagami,
            "nbin" | "negbin" | "negativebinomial" => ModelId::NegativeBinomial,
            "gauss" | "gaussian" | "normal" => ModelId::Gaussian,
            "pois" | "poisson" => ModelId::Poisson,
            "plaw" | "powerlaw" => ModelId::PowerLaw,
            "rayl" | "rayleigh" => ModelId::Rayleigh,
            "weib" | "wbl" | "weibull" => ModelId::Weibull,
            "yule" | "ys" | "yulesimon" => ModelId::YuleSimon,
            _ => return Err(Error::Config(format!("unknown model '{s}'"))),
        };
        Ok(id)
    }
}

/// Parameter values of one model, in the order given by [`ModelId::param_names`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Look a parameter up by name for the given model.
    pub fn get(&self, model: ModelId, name: &str) -> Option<f64> {
        model.param_names().iter().position(|n| *n == name).and_then(|i| self.0.get(i).copied())
    }
}

impl From<Vec<f64>> for ParamVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl<const N: usize> From<[f64; N]> for ParamVector {
    fn from(values: [f64; N]) -> Self {
        Self(values.to_vec())
    }
}

/// Pairs (restricted, full) where the first model is a parameter-restricted
/// case of the second.
pub fn nested_pairs() -> Vec<(ModelId, ModelId)> {
    vec![
        (ModelId::Exponential, ModelId::Weibull),
        (ModelId::Exponential, ModelId::Gamma),
        (ModelId::Exponential, ModelId::GeneralizedPareto),
        (ModelId::Geometric, ModelId::NegativeBinomial),
        (ModelId::Rayleigh, ModelId::Weibull),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_pair_catalogue() {
        let pairs = nested_pairs();
        assert_eq!(pairs.len(), 5);
        assert!(pairs.contains(&(ModelId::Exponential, ModelId::Gamma)));
        assert!(!pairs.contains(&(ModelId::Poisson, ModelId::Gaussian)));
        for (r, f) in pairs {
            assert!(r.arity() < f.arity());
        }
    }

    #[test]
    fn names_round_trip() {
        for m in ModelId::ALL {
            assert_eq!(m.name().parse::<ModelId>().unwrap(), m);
            assert_eq!(m.short_name().parse::<ModelId>().unwrap(), m);
        }
        assert!("cauchy".parse::<ModelId>().is_err());
    }

    #[test]
    fn discrete_models() {
        let discrete: Vec<_> = ModelId::ALL.into_iter().filter(|m| m.is_discrete()).collect();
        assert_eq!(
            discrete,
            vec![
                ModelId::Geometric,
                ModelId::NegativeBinomial,
                ModelId::Poisson,
                ModelId::PowerLaw,
                ModelId::YuleSimon
            ]
        );
    }

    #[test]
    fn validation() {
        assert!(ModelId::PowerLaw.validate(&[2.5, 1.0].into()).is_ok());
        assert!(ModelId::PowerLaw.validate(&[1.0, 1.0].into()).is_err());
        assert!(ModelId::Geometric.validate(&[1.0].into()).is_ok());
        assert!(ModelId::Geometric.validate(&[0.0].into()).is_err());
        assert!(ModelId::YuleSimon.validate(&[-1.0].into()).is_err());
        assert!(ModelId::Gaussian.validate(&[0.0].into()).is_err());
        assert!(ModelId::NegativeBinomial.validate(&[2.0, 1.0].into()).is_err());
    }
}
