use std::f64::consts::{LN_2, LOG2_E, PI};

use super::config::{FirstNorm, ParamScheme, Randomness, SecondNorm};
use crate::corpus::{CorpusStats, TermStats};
use crate::numerics::lgamma;
use crate::{Error, Result};

const SPL_EPS: f64 = 1e-6;

/// Document-length normalised term frequency.
pub fn normalized_tf(f_td: u64, doc_len: u64, avg_l: f64, norm: SecondNorm) -> f64 {
    normalized_tf_real(f_td as f64, doc_len as f64, avg_l, norm)
}

pub(crate) fn normalized_tf_real(f_td: f64, doc_len: f64, avg_l: f64, norm: SecondNorm) -> f64 {
    match norm {
        SecondNorm::None => f_td,
        SecondNorm::Uniform => f_td * avg_l / doc_len,
        SecondNorm::Logarithmic { c } => f_td * (1.0 + c * avg_l / doc_len).log2(),
    }
}

pub fn model_parameter(scheme: ParamScheme, term: &TermStats, stats: &CorpusStats) -> f64 {
    let n = stats.num_docs as f64;
    let ttc = term.collection_freq as f64 / n;
    let tdc = term.doc_freq as f64 / n;
    match scheme {
        ParamScheme::Ttc => ttc,
        ParamScheme::Tdc => tdc,
        ParamScheme::Ttc2 => ttc * ttc,
        ParamScheme::Tdc2 => tdc * tdc,
        ParamScheme::TtcPlus1 => 1.0 + ttc,
        ParamScheme::TdcPlus1 => 1.0 + tdc,
        ParamScheme::Fixed(v) => v,
    }
}

fn domain(what: &str, v: f64) -> Error {
    Error::Config(format!("{what} out of domain: {v}"))
}

/// Informative content −log₂ P₁ of `f_hat` occurrences under a model of randomness.
pub fn inf1(
    randomness: Randomness,
    f_hat: f64,
    param: f64,
    pl_xmin: f64,
    term: &TermStats,
    stats: &CorpusStats,
) -> Result<f64> {
    let n = stats.num_docs as f64;
    let f_tc = term.collection_freq as f64;
    let n_t = term.doc_freq as f64;
    let needs_positive_f = !matches!(randomness, Randomness::LL | Randomness::SPL);
    if !(f_hat >= 0.0) || (needs_positive_f && f_hat == 0.0) || !f_hat.is_finite() {
        return Err(domain("normalised term frequency", f_hat));
    }
    let value = match randomness {
        Randomness::Poisson => {
            if !(param > 0.0) {
                return Err(domain("Poisson lambda", param));
            }
            f_hat * (f_hat / param).log2()
                + (param + 1.0 / (12.0 * f_hat) - f_hat) * LOG2_E
                + 0.5 * (2.0 * PI * f_hat).log2()
        }
        Randomness::Geometric => {
            if !(param > 0.0) {
                return Err(domain("geometric lambda", param));
            }
            -(1.0 / (1.0 + param)).log2() - f_hat * (param / (1.0 + param)).log2()
        }
        Randomness::In => f_hat * ((n + 1.0) / (n_t + 0.5)).log2(),
        Randomness::IF => f_hat * ((n + 1.0) / (f_tc + 0.5)).log2() + (f_tc / n).log2(),
        Randomness::Ine => {
            let n_e = n * (1.0 - ((n - 1.0) / n).powf(f_tc));
            f_hat * ((n + 1.0) / (n_e + 0.5)).log2()
        }
        Randomness::YuleADR => {
            if !(param > 0.0) || !param.is_finite() {
                return Err(domain("Yule p", param));
            }
            let ln_pmf = param.ln() + lgamma(f_hat) + lgamma(param + 1.0) - lgamma(f_hat + param + 1.0);
            -ln_pmf / LN_2
        }
        Randomness::PowerLawADR => {
            if !(param > 1.0) || !param.is_finite() {
                return Err(domain("power-law alpha", param));
            }
            if !(pl_xmin > 0.0) {
                return Err(domain("power-law x_min", pl_xmin));
            }
            let g = f_hat.max(pl_xmin);
            -((param - 1.0).ln() + (param - 1.0) * pl_xmin.ln() - param * g.ln()) / LN_2
        }
        Randomness::LL => {
            if !(param > 0.0) || !param.is_finite() {
                return Err(domain("log-logistic r", param));
            }
            ((param + f_hat) / param).log2()
        }
        Randomness::SPL => {
            if !param.is_finite() {
                return Err(domain("SPL lambda", param));
            }
            let lambda = param.clamp(SPL_EPS, 1.0 - SPL_EPS);
            let ratio = (lambda.powf(f_hat / (f_hat + 1.0)) - lambda) / (1.0 - lambda);
            -ratio.log2()
        }
        Randomness::LMDir => return Err(Error::Config("LMDir has no model of randomness".into())),
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numerical(format!("non-finite informative content for f={f_hat}, param={param}")))
    }
}

/// Risk factor 1 − P₂; `clamped` is set when a Bernoulli estimate left [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Risk {
    pub value: f64,
    pub clamped: bool,
}

pub fn inf2_risk(first_norm: FirstNorm, f_hat: f64, term: &TermStats) -> Result<Risk> {
    if !(f_hat >= 0.0) {
        return Err(domain("normalised term frequency", f_hat));
    }
    Ok(match first_norm {
        FirstNorm::None => Risk { value: 1.0, clamped: false },
        FirstNorm::Laplace => Risk { value: 1.0 / (f_hat + 1.0), clamped: false },
        FirstNorm::Bernoulli => {
            if term.doc_freq == 0 {
                return Err(Error::Config(format!("Bernoulli risk needs n_t ≥ 1 for '{}'", term.term)));
            }
            let raw = 1.0 - (term.collection_freq as f64 + 1.0) / (term.doc_freq as f64 * (f_hat + 1.0));
            let value = raw.clamp(0.0, 1.0);
            Risk { value, clamped: value != raw }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(cf: u64, df: u64) -> TermStats {
        TermStats { term: "t".into(), collection_freq: cf, doc_freq: df }
    }

    fn corpus(n: u64) -> CorpusStats {
        CorpusStats { num_docs: n, total_terms: 10 * n, avg_doc_len: 10.0, vocab_size: 100 }
    }

    #[test]
    fn tf_normalisation() {
        assert_eq!(normalized_tf(2, 40, 40.0, SecondNorm::Logarithmic { c: 1.0 }), 2.0);
        assert_eq!(normalized_tf(7, 40, 40.0, SecondNorm::Uniform), 7.0);
        assert_eq!(normalized_tf(7, 20, 40.0, SecondNorm::Uniform), 14.0);
        assert_eq!(normalized_tf(7, 20, 40.0, SecondNorm::None), 7.0);
        let v = normalized_tf(3, 50, 100.0, SecondNorm::Logarithmic { c: 2.0 });
        assert!((v - 3.0 * 5f64.log2()).abs() < 1e-12);
        assert!((v - 6.965784).abs() < 1e-6);
    }

    #[test]
    fn schemes() {
        let s = corpus(2);
        assert_eq!(model_parameter(ParamScheme::Tdc, &term(3, 1), &s), 0.5);
        assert_eq!(model_parameter(ParamScheme::Tdc2, &term(3, 1), &s), 0.25);
        assert_eq!(model_parameter(ParamScheme::TtcPlus1, &term(3, 1), &s), 2.5);
        assert_eq!(model_parameter(ParamScheme::Ttc2, &term(3, 1), &s), 2.25);
        assert_eq!(model_parameter(ParamScheme::TdcPlus1, &term(3, 2), &s), 2.0);
        assert_eq!(model_parameter(ParamScheme::Fixed(1.627), &term(3, 2), &s), 1.627);
    }

    #[test]
    fn table_rows() {
        let (t, s) = (term(5, 3), corpus(10));
        let p = inf1(Randomness::Poisson, 1.0, 1.0, 1.0, &t, &s).unwrap();
        assert!((p - 1.445973).abs() < 1e-6, "{p}");
        assert!((inf1(Randomness::Geometric, 1.0, 1.0, 1.0, &t, &s).unwrap() - 2.0).abs() < 1e-12);
        let inn = inf1(Randomness::In, 2.0, 0.0, 1.0, &t, &s).unwrap();
        assert!((inn - 2.0 * (11.0f64 / 3.5).log2()).abs() < 1e-12);
        let iff = inf1(Randomness::IF, 2.0, 0.0, 1.0, &t, &s).unwrap();
        assert!((iff - (2.0 * (11.0f64 / 5.5).log2() + 0.5f64.log2())).abs() < 1e-12);
        let ine = inf1(Randomness::Ine, 2.0, 0.0, 1.0, &t, &s).unwrap();
        let n_e = 10.0 * (1.0 - 0.9f64.powi(5));
        assert!((ine - 2.0 * (11.0 / (n_e + 0.5)).log2()).abs() < 1e-12);
        for r in [0.01, 0.5, 3.0] {
            assert_eq!(inf1(Randomness::LL, 0.0, r, 1.0, &t, &s).unwrap(), 0.0);
            assert_eq!(inf1(Randomness::SPL, 0.0, r, 1.0, &t, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn yule_equals_pmf_at_integers() {
        // p·B(x, p+1) at x = 1 is p/(p+1).
        let (t, s) = (term(5, 3), corpus(10));
        let v = inf1(Randomness::YuleADR, 1.0, 1.5, 1.0, &t, &s).unwrap();
        assert!((v + (1.5f64 / 2.5).log2()).abs() < 1e-12);
    }

    #[test]
    fn power_law_clamps_below_xmin() {
        let (t, s) = (term(5, 3), corpus(10));
        let a = inf1(Randomness::PowerLawADR, 0.3, 2.0, 1.0, &t, &s).unwrap();
        let b = inf1(Randomness::PowerLawADR, 1.0, 2.0, 1.0, &t, &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, 0.0);
        let c = inf1(Randomness::PowerLawADR, 4.0, 2.0, 1.0, &t, &s).unwrap();
        assert!((c - 4.0).abs() < 1e-12);
        assert!(inf1(Randomness::PowerLawADR, 4.0, 1.0, 1.0, &t, &s).is_err());
    }

    #[test]
    fn domain_errors() {
        let (t, s) = (term(5, 3), corpus(10));
        assert!(inf1(Randomness::YuleADR, 0.0, 1.0, 1.0, &t, &s).is_err());
        assert!(inf1(Randomness::YuleADR, 1.0, 0.0, 1.0, &t, &s).is_err());
        assert!(inf1(Randomness::LL, 1.0, -1.0, 1.0, &t, &s).is_err());
        assert!(inf1(Randomness::LMDir, 1.0, 1.0, 1.0, &t, &s).is_err());
    }

    #[test]
    fn risks() {
        let t = term(9, 5);
        assert_eq!(inf2_risk(FirstNorm::Laplace, 3.0, &t).unwrap().value, 0.25);
        assert_eq!(inf2_risk(FirstNorm::Laplace, 0.0, &t).unwrap().value, 1.0);
        assert_eq!(inf2_risk(FirstNorm::None, 3.0, &t).unwrap().value, 1.0);
        let b = inf2_risk(FirstNorm::Bernoulli, 1.0, &t).unwrap();
        assert_eq!((b.value, b.clamped), (0.0, false));
        let c = inf2_risk(FirstNorm::Bernoulli, 0.5, &t).unwrap();
        assert_eq!((c.value, c.clamped), (0.0, true));
        let d = inf2_risk(FirstNorm::Bernoulli, 3.0, &t).unwrap();
        assert!((d.value - 0.5).abs() < 1e-12);
    }
}
