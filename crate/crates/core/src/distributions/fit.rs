use std::fmt::Write as _;

use super::density::PreparedModel;
use super::model::{ModelId, ParamVector, Support};
use super::sample::{Sample, WeightedView};
use crate::numerics::{
    nelder_mead_minimize, NelderMeadSettings, OptimizationProblem, RandomSource, Transform,
};
use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Controls for [`mle_fit`].
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Allow continuous models on integer-valued samples.
    pub allow_continuous_on_discrete: bool,
    /// Use the optimizer even where a closed form exists.
    pub force_optimizer: bool,
    pub optimizer: NelderMeadSettings,
    /// Seed for optimizer restarts; mixed with the model id.
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            allow_continuous_on_discrete: true,
            force_optimizer: false,
            optimizer: NelderMeadSettings::default(),
            seed: 42,
        }
    }
}

/// A maximum-likelihood fit of one model to one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub model: ModelId,
    pub params: ParamVector,
    pub n: usize,
    pub total_loglik: f64,
    pub pointwise_loglik: Vec<f64>,
    /// Hurvich–Tsai AICc; `None` when n ≤ k + 1.
    pub aicc: Option<f64>,
    /// False when the optimizer stopped on its iteration cap.
    pub converged: bool,
    /// True when a continuous model was fitted to integer-valued data.
    pub continuous_on_discrete: bool,
    pub iterations: usize,
}

impl FittedModel {
    /// Assemble a fit from parameters, computing likelihoods on `sample`.
    pub fn from_params(
        model: ModelId,
        params: ParamVector,
        sample: &Sample,
        converged: bool,
        iterations: usize,
    ) -> Result<Self> {
        let prepared = PreparedModel::new(model, &params)?;
        let pointwise_loglik: Vec<f64> = sample.values().iter().map(|&x| prepared.ln_pdf(x)).collect();
        let total_loglik: f64 = pointwise_loglik.iter().sum();
        let n = sample.len();
        let k = model.arity() as f64;
        let aicc = (n as f64 > k + 1.0)
            .then(|| -2.0 * total_loglik + 2.0 * k + 2.0 * k * (k + 1.0) / (n as f64 - k - 1.0));
        Ok(Self {
            model,
            params,
            n,
            total_loglik,
            pointwise_loglik,
            aicc,
            converged,
            continuous_on_discrete: !model.is_discrete() && sample.is_integer_valued(),
            iterations,
        })
    }

    /// Flat `key=value` record separated by tabs: model, parameters, n,
    /// total log-likelihood, AICc and the two status flags.
    pub fn to_record(&self) -> String {
        let mut out = format!("model={}", self.model.name());
        for (name, v) in self.model.param_names().iter().zip(self.params.values()) {
            let _ = write!(out, "\t{name}={v}");
        }
        let _ = write!(out, "\tn={}\ttotal_loglik={}", self.n, self.total_loglik);
        match self.aicc {
            Some(a) => {
                let _ = write!(out, "\taicc={a}");
            }
            None => out.push_str("\taicc=NA"),
        }
        let _ = write!(
            out,
            "\tconverged={}\tcontinuous_on_discrete={}",
            self.converged, self.continuous_on_discrete
        );
        out
    }
}

/// Fields of a parsed fit record (pointwise likelihoods are not serialized).
#[derive(Debug, Clone, PartialEq)]
pub struct FitRecord {
    pub model: ModelId,
    pub params: ParamVector,
    pub n: usize,
    pub total_loglik: f64,
    pub aicc: Option<f64>,
    pub converged: bool,
    pub continuous_on_discrete: bool,
}

impl FitRecord {
    pub fn parse(line: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for part in line.trim_end_matches(['\n', '\r']).split('\t') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("fit record field without '=': '{part}'")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields.get(k).copied().ok_or_else(|| Error::Format(format!("fit record lacks '{k}'")))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?.parse::<f64>().map_err(|e| Error::Format(format!("fit record '{k}': {e}")))
        };
        let flag = |k: &str| -> Result<bool> {
            get(k)?.parse::<bool>().map_err(|e| Error::Format(format!("fit record '{k}': {e}")))
        };
        let model: ModelId = get("model")?.parse()?;
        let params = model.param_names().iter().map(|n| num(n)).collect::<Result<Vec<_>>>()?;
        let aicc = match get("aicc")? {
            "NA" => None,
            _ => Some(num("aicc")?),
        };
        Ok(Self {
            model,
            params: ParamVector::new(params),
            n: get("n")?.parse().map_err(|e| Error::Format(format!("fit record 'n': {e}")))?,
            total_loglik: num("total_loglik")?,
            aicc,
            converged: flag("converged")?,
            continuous_on_discrete: flag("continuous_on_discrete")?,
        })
    }
}

/// Maximum-likelihood fit of `model` to `sample`.
///
/// Closed forms are used for the exponential, Poisson, Gaussian, geometric,
/// Rayleigh, log-normal and inverse Gaussian models; everything else goes
/// through Nelder–Mead on the negative log-likelihood. The power-law cutoff
/// is fixed to the sample minimum, and so is the generalized-Pareto location
/// (one below the minimum on integer data).
pub fn mle_fit(model: ModelId, sample: &Sample, options: &FitOptions) -> Result<FittedModel> {
    check_compatible(model, sample, options)?;
    let view = WeightedView::new(sample);
    let mut rng = RandomSource::new(
        options.seed ^ (model as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );

    if !options.force_optimizer {
        if let Some(params) = closed_form(model, &view)? {
            return FittedModel::from_params(model, params, sample, true, 0);
        }
    }
    let spec = optimizer_spec(model, &view)?;
    let fixed = spec.fixed.clone();
    let assemble = move |free: &[f64]| -> ParamVector {
        let mut v = free.to_vec();
        v.extend_from_slice(&fixed);
        ParamVector::new(v)
    };
    let objective = |free: &[f64]| -> f64 {
        match PreparedModel::new(model, &assemble(free)) {
            Ok(pm) => -view.weighted_sum(|x| pm.ln_pdf(x)),
            Err(_) => f64::NAN,
        }
    };
    let problem =
        OptimizationProblem::new(objective, spec.start.clone()).with_transforms(spec.transforms.clone());
    let result = nelder_mead_minimize(&problem, &options.optimizer, &mut rng).map_err(|e| {
        Error::Numerical(format!("{} fit failed: {e}", model.name()))
    })?;
    let params = assemble(&result.argmin);
    let fitted = FittedModel::from_params(model, params, sample, result.converged, result.iterations)?;
    if !fitted.total_loglik.is_finite() {
        return Err(Error::Numerical(format!(
            "{} fit ended with non-finite log-likelihood",
            model.name()
        )));
    }
    Ok(fitted)
}

fn check_compatible(model: ModelId, sample: &Sample, options: &FitOptions) -> Result<()> {
    let name = model.name();
    if model.is_discrete() && !sample.is_integer_valued() {
        return Err(Error::Support(format!("{name} needs integer data")));
    }
    if !model.is_discrete() && sample.is_discrete() && !options.allow_continuous_on_discrete {
        return Err(Error::Support(format!(
            "{name} is continuous and fitting continuous models to discrete data is disabled"
        )));
    }
    let min = sample.min();
    let ok = match model.support() {
        Support::NonNegativeIntegers | Support::NonNegativeReals => min >= 0.0,
        Support::PositiveIntegers | Support::IntegersFromCutoff => min >= 1.0,
        Support::PositiveReals => min > 0.0,
        Support::RealLine | Support::ParameterDependent => true,
    };
    if !ok {
        return Err(Error::Support(format!("{name} cannot model a sample with minimum {min}")));
    }
    if sample.len() < model.arity() + 1 {
        return Err(Error::DegenerateSample(format!(
            "{name} needs at least {} observations, got {}",
            model.arity() + 1,
            sample.len()
        )));
    }
    Ok(())
}

fn degenerate(model: ModelId, what: &str) -> Error {
    Error::DegenerateSample(format!("{}: {what}", model.name()))
}

fn closed_form(model: ModelId, view: &WeightedView) -> Result<Option<ParamVector>> {
    let mean = view.weighted_mean(|x| x);
    let params = match model {
        ModelId::Exponential | ModelId::Poisson => {
            if mean <= 0.0 {
                return Err(degenerate(model, "sample mean is zero"));
            }
            vec![mean]
        }
        ModelId::Gaussian => {
            let var = view.weighted_mean(|x| (x - mean) * (x - mean));
            if var <= 0.0 {
                return Err(degenerate(model, "zero variance"));
            }
            vec![mean, var]
        }
        ModelId::Geometric => vec![1.0 / (1.0 + mean)],
        ModelId::Rayleigh => {
            let b = (view.weighted_mean(|x| x * x) / 2.0).sqrt();
            vec![b]
        }
        ModelId::LogNormal => {
            let m = view.weighted_mean(f64::ln);
            let var = view.weighted_mean(|x| (x.ln() - m) * (x.ln() - m));
            if var <= 0.0 {
                return Err(degenerate(model, "zero variance of ln x"));
            }
            vec![m, var]
        }
        ModelId::InverseGaussian => {
            let inv = view.weighted_mean(|x| 1.0 / x) - 1.0 / mean;
            if inv <= 0.0 {
                return Err(degenerate(model, "zero dispersion"));
            }
            vec![mean, 1.0 / inv]
        }
        _ => return Ok(None),
    };
    Ok(Some(ParamVector::new(params)))
}

struct OptimizerSpec {
    start: Vec<f64>,
    transforms: Vec<Transform>,
    /// Trailing parameters held fixed (power-law cutoff, Pareto location).
    fixed: Vec<f64>,
}

fn spec(start: Vec<f64>, transforms: Vec<Transform>) -> OptimizerSpec {
    OptimizerSpec { start, transforms, fixed: Vec::new() }
}

fn median(view: &WeightedView) -> f64 {
    let half = view.n() / 2.0;
    let mut acc = 0.0;
    for (&x, &w) in view.values.iter().zip(&view.weights) {
        acc += w;
        if acc >= half {
            return x;
        }
    }
    *view.values.last().unwrap()
}

fn optimizer_spec(model: ModelId, view: &WeightedView) -> Result<OptimizerSpec> {
    use Transform::*;
    let mean = view.weighted_mean(|x| x);
    let var = view.weighted_mean(|x| (x - mean) * (x - mean));
    let sd = var.sqrt();
    let min = view.values[0];
    let s = match model {
        // Reachable only when the optimizer is forced; the start is kept
        // deliberately away from the closed-form answer.
        ModelId::Exponential | ModelId::Poisson => {
            if mean <= 0.0 {
                return Err(degenerate(model, "sample mean is zero"));
            }
            spec(vec![median(view).max(0.5 * mean) + 0.5], vec![Log])
        }
        ModelId::Gaussian => {
            if var <= 0.0 {
                return Err(degenerate(model, "zero variance"));
            }
            spec(vec![median(view) + 0.3 * sd, 2.0 * var], vec![Identity, Log])
        }
        ModelId::Geometric => spec(vec![0.5], vec![Logit]),
        ModelId::Rayleigh => spec(vec![mean.max(1e-3)], vec![Log]),
        ModelId::LogNormal => {
            let m = view.weighted_mean(f64::ln);
            spec(vec![m + 0.2, 1.0], vec![Identity, Log])
        }
        ModelId::InverseGaussian => spec(vec![mean * 1.2, mean.max(1e-3)], vec![Log, Log]),
        ModelId::Gamma => {
            let s = mean.ln() - view.weighted_mean(f64::ln);
            if !(s > 0.0) {
                return Err(degenerate(model, "zero variance"));
            }
            let a = (3.0 - s + ((s - 3.0) * (s - 3.0) + 24.0 * s).sqrt()) / (12.0 * s);
            spec(vec![a, mean / a], vec![Log, Log])
        }
        ModelId::Weibull => {
            let lm = view.weighted_mean(f64::ln);
            let lsd = view.weighted_mean(|x| (x.ln() - lm).powi(2)).sqrt();
            if !(lsd > 0.0) {
                return Err(degenerate(model, "zero variance"));
            }
            let b = std::f64::consts::PI / (lsd * 6f64.sqrt());
            spec(vec![(lm + EULER_GAMMA / b).exp(), b], vec![Log, Log])
        }
        ModelId::Nakagami => {
            let omega = view.weighted_mean(|x| x * x);
            let v2 = view.weighted_mean(|x| (x * x - omega).powi(2));
            if !(v2 > 0.0) {
                return Err(degenerate(model, "zero variance"));
            }
            spec(vec![(omega * omega / v2).max(0.05), omega], vec![Log, Log])
        }
        ModelId::Logistic => {
            if !(var > 0.0) {
                return Err(degenerate(model, "zero variance"));
            }
            spec(vec![median(view), sd * 3f64.sqrt() / std::f64::consts::PI], vec![Identity, Log])
        }
        ModelId::Gev => {
            if !(var > 0.0) {
                return Err(degenerate(model, "zero variance"));
            }
            let sigma = sd * 6f64.sqrt() / std::f64::consts::PI;
            // A small positive shape keeps every observation inside the
            // support at the Gumbel moment start.
            // Gumbel median is μ − σ ln ln 2.
            let mu = median(view) - 0.3665 * sigma;
            let mut k = 0.1;
            while min <= mu - sigma / k && k > 1e-4 {
                k *= 0.5;
            }
            spec(vec![k, sigma, mu], vec![LowerBound(-1.0), Log, Identity])
        }
        ModelId::GeneralizedPareto => {
            // On integer data the location sits one unit below the minimum:
            // with θ at a tied minimum the likelihood is unbounded (σ → 0,
            // k → ∞ puts a spike on the atom).
            let integer = view.values.iter().all(|v| v.fract() == 0.0);
            let theta = if integer { min - 1.0 } else { min };
            let m = mean - theta;
            if !(var > 0.0) || !(m > 0.0) {
                return Err(degenerate(model, "zero variance"));
            }
            let k = (0.5 * (1.0 - m * m / var)).clamp(-0.5, 0.45);
            let sigma = m * (1.0 - k);
            let mut s = spec(vec![k.max(0.0), sigma], vec![LowerBound(-1.0), Log]);
            s.fixed = vec![theta];
            s
        }
        ModelId::NegativeBinomial => {
            if !(mean > 0.0) {
                return Err(degenerate(model, "sample mean is zero"));
            }
            // Overdispersion moment start: var = mean / (1 − p).
            let p = if var > mean { (1.0 - mean / var).clamp(0.01, 0.99) } else { 0.05 };
            let r = mean * (1.0 - p) / p;
            spec(vec![r, p], vec![Log, Logit])
        }
        ModelId::PowerLaw => {
            let xmin = min;
            // Continuous approximation for a discrete sample.
            let denom = view.weighted_mean(|x| (x / (xmin - 0.5)).ln());
            let alpha = if denom > 0.0 { (1.0 + 1.0 / denom).clamp(1.05, 20.0) } else { 2.0 };
            let mut s = spec(vec![alpha], vec![LowerBound(1.0)]);
            s.fixed = vec![xmin];
            s
        }
        ModelId::YuleSimon => {
            // Mean is p / (p − 1) for p > 1.
            let p = if mean > 1.05 { (mean / (mean - 1.0)).clamp(0.2, 20.0) } else { 10.0 };
            spec(vec![p], vec![Log])
        }
    };
    Ok(s)
}
