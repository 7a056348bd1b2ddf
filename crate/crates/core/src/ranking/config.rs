use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Randomness {
    Poisson,
    Geometric,
    In,
    IF,
    Ine,
    YuleADR,
    PowerLawADR,
    LL,
    SPL,
    LMDir,
}

impl Randomness {
    fn abbrev(self) -> &'static str {
        match self {
            Randomness::Poisson => "P",
            Randomness::Geometric => "G",
            Randomness::In => "In",
            Randomness::IF => "IF",
            Randomness::Ine => "Ine",
            Randomness::YuleADR => "YS",
            Randomness::PowerLawADR => "PL",
            Randomness::LL => "LL",
            Randomness::SPL => "SPL",
            Randomness::LMDir => "LMDir",
        }
    }

    /// Information models that omit the first normalisation.
    pub fn is_information_model(self) -> bool {
        matches!(self, Randomness::LL | Randomness::SPL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstNorm {
    None,
    Laplace,
    Bernoulli,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondNorm {
    None,
    Uniform,
    Logarithmic { c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamScheme {
    Ttc,
    Tdc,
    Ttc2,
    Tdc2,
    TtcPlus1,
    TdcPlus1,
    Fixed(f64),
}

impl fmt::Display for ParamScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamScheme::Ttc => f.write_str("Ttc"),
            ParamScheme::Tdc => f.write_str("Tdc"),
            ParamScheme::Ttc2 => f.write_str("Ttc2"),
            ParamScheme::Tdc2 => f.write_str("Tdc2"),
            ParamScheme::TtcPlus1 => f.write_str("Ttc+1"),
            ParamScheme::TdcPlus1 => f.write_str("Tdc+1"),
            ParamScheme::Fixed(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ParamScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "ttc" => ParamScheme::Ttc,
            "tdc" => ParamScheme::Tdc,
            "ttc2" => ParamScheme::Ttc2,
            "tdc2" => ParamScheme::Tdc2,
            "ttc+1" | "ttcplus1" => ParamScheme::TtcPlus1,
            "tdc+1" | "tdcplus1" => ParamScheme::TdcPlus1,
            other => {
                let v = other.strip_prefix("fixed:").unwrap_or(other);
                ParamScheme::Fixed(v.parse().map_err(|_| Error::Config(format!("unknown parameter scheme '{s}'")))?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankingConfig {
    pub randomness: Randomness,
    pub first_norm: FirstNorm,
    pub second_norm: SecondNorm,
    pub param_scheme: ParamScheme,
    /// Dirichlet prior, used by LMDir only.
    pub mu: f64,
    /// Power-law lower cutoff, used by PL-ADR only.
    pub pl_xmin: f64,
}

impl RankingConfig {
    pub fn dfr(randomness: Randomness, first_norm: FirstNorm, second_norm: SecondNorm, param_scheme: ParamScheme) -> Result<Self> {
        let cfg = RankingConfig { randomness, first_norm, second_norm, param_scheme, mu: 1000.0, pl_xmin: 1.0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn lm_dirichlet(mu: f64) -> Result<Self> {
        let cfg = RankingConfig {
            randomness: Randomness::LMDir,
            first_norm: FirstNorm::None,
            second_norm: SecondNorm::None,
            param_scheme: ParamScheme::Tdc,
            mu,
            pl_xmin: 1.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replaces the logarithmic normalisation constant, if that normalisation is in use.
    pub fn with_c(mut self, c: f64) -> Result<Self> {
        if let SecondNorm::Logarithmic { .. } = self.second_norm {
            self.second_norm = SecondNorm::Logarithmic { c };
        }
        self.validate()?;
        Ok(self)
    }

    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        self.mu = mu;
        self.validate()?;
        Ok(self)
    }

    pub fn with_pl_xmin(mut self, xmin: f64) -> Result<Self> {
        self.pl_xmin = xmin;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.randomness == Randomness::LMDir {
            return if self.mu > 0.0 && self.mu.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("LMDir needs mu > 0, got {}", self.mu)))
            };
        }
        if self.randomness.is_information_model() && self.first_norm != FirstNorm::None {
            return Err(Error::Config(format!("{} takes no first normalisation", self.randomness.abbrev())));
        }
        if let SecondNorm::Logarithmic { c } = self.second_norm {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::Config(format!("logarithmic normalisation needs c > 0, got {c}")));
            }
        }
        if self.randomness == Randomness::PowerLawADR {
            match self.param_scheme {
                ParamScheme::TtcPlus1 | ParamScheme::TdcPlus1 => {}
                ParamScheme::Fixed(a) if a > 1.0 => {}
                s => return Err(Error::Config(format!("PL-ADR needs alpha > 1; scheme {s} is not allowed"))),
            }
            if !(self.pl_xmin > 0.0 && self.pl_xmin.is_finite()) {
                return Err(Error::Config(format!("PL-ADR needs x_min > 0, got {}", self.pl_xmin)));
            }
        }
        Ok(())
    }

    /// Parses a compact model name such as `YSL2-Tdc2`, `PL2-Tdc`, `LL2-Ttc` or `LMDir`.
    ///
    /// The name is a randomness model (P, G, In, IF, Ine, YS, PL, LL, SPL), an
    /// optional first-normalisation letter (L Laplace, B Bernoulli), an
    /// optional second-normalisation digit (1 uniform, 2 logarithmic with c = 1)
    /// and an optional `-scheme` suffix (Ttc, Tdc, Ttc2, Tdc2, Ttc+1, Tdc+1 or a
    /// number). `PL2` reads as Poisson; the power-law model is `PLL2`. The
    /// default scheme is Tdc, or Tdc+1 for the power-law model.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, scheme) = match spec.split_once('-') {
            Some((n, s)) => (n, Some(s.parse::<ParamScheme>()?)),
            None => (spec, None),
        };
        if name.eq_ignore_ascii_case("lmdir") {
            if scheme.is_some() {
                return Err(Error::Config("LMDir takes no parameter scheme".into()));
            }
            return RankingConfig::lm_dirichlet(1000.0);
        }
        let long_names = [
            ("YuleADR", Randomness::YuleADR),
            ("PowerLawADR", Randomness::PowerLawADR),
            ("SPL", Randomness::SPL),
            ("LL", Randomness::LL),
            ("YS", Randomness::YuleADR),
            ("Ine", Randomness::Ine),
            ("IF", Randomness::IF),
            ("In", Randomness::In),
            ("P", Randomness::Poisson),
            ("G", Randomness::Geometric),
            ("PL", Randomness::PowerLawADR),
        ];
        for (prefix, randomness) in long_names {
            let Some(rest) = name.strip_prefix(prefix) else { continue };
            let Some((first_norm, second_norm)) = parse_norms(rest) else { continue };
            let default_scheme =
                if randomness == Randomness::PowerLawADR { ParamScheme::TdcPlus1 } else { ParamScheme::Tdc };
            return RankingConfig::dfr(randomness, first_norm, second_norm, scheme.unwrap_or(default_scheme));
        }
        Err(Error::Config(format!("unparseable model spec '{spec}'")))
    }
}

fn parse_norms(rest: &str) -> Option<(FirstNorm, SecondNorm)> {
    let mut chars = rest.chars().peekable();
    let first = match chars.peek() {
        Some('L') => {
            chars.next();
            FirstNorm::Laplace
        }
        Some('B') => {
            chars.next();
            FirstNorm::Bernoulli
        }
        _ => FirstNorm::None,
    };
    let second = match chars.next() {
        None => SecondNorm::None,
        Some('0') => SecondNorm::None,
        Some('1') => SecondNorm::Uniform,
        Some('2') => SecondNorm::Logarithmic { c: 1.0 },
        Some(_) => return None,
    };
    chars.next().is_none().then_some((first, second))
}

impl fmt::Display for RankingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.randomness == Randomness::LMDir {
            return write!(f, "LMDir(mu={})", self.mu);
        }
        let first = match self.first_norm {
            FirstNorm::None => "",
            FirstNorm::Laplace => "L",
            FirstNorm::Bernoulli => "B",
        };
        let second = match self.second_norm {
            SecondNorm::None => "0",
            SecondNorm::Uniform => "1",
            SecondNorm::Logarithmic { .. } => "2",
        };
        write!(f, "{}{first}{second}-{}", self.randomness.abbrev(), self.param_scheme)?;
        if let SecondNorm::Logarithmic { c } = self.second_norm {
            write!(f, "(c={c})")?;
        }
        if self.randomness == Randomness::PowerLawADR {
            write!(f, "(xmin={})", self.pl_xmin)?;
        }
        Ok(())
    }
}
