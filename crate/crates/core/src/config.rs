//! Line-oriented `key = value` run configuration.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::distributions::ModelId;
use crate::evaluation::Metric;
use crate::selection::AiccVariant;
use crate::weighting::ClassifierRule;
use crate::{Error, Result};

pub const CONFIG_ENV: &str = "ADRANK_CONFIG";

pub const DEFAULT_C_GRID: [f64; 6] = [0.5, 1.0, 2.0, 4.0, 6.0, 8.0];
pub const DEFAULT_MU_GRID: [f64; 10] = [100.0, 500.0, 800.0, 1000.0, 2000.0, 3000.0, 4000.0, 5000.0, 8000.0, 10000.0];

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub seed: u64,
    pub alpha: f64,
    pub criterion: AiccVariant,
    pub models: Vec<ModelId>,
    pub goodness_of_fit: bool,
    pub stopwords: Option<PathBuf>,
    pub rule: ClassifierRule,
    pub fraction: f64,
    pub k: usize,
    pub c: f64,
    pub mu: f64,
    pub pl_xmin: f64,
    pub c_grid: Vec<f64>,
    pub mu_grid: Vec<f64>,
    pub folds: usize,
    pub objective: Metric,
    pub run_tag: String,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 42,
            alpha: 0.05,
            criterion: AiccVariant::HurvichTsai,
            models: ModelId::ALL.to_vec(),
            goodness_of_fit: true,
            stopwords: None,
            rule: crate::cascade::DEFAULT_RULE.parse().expect("default rule parses"),
            fraction: 0.1,
            k: 1000,
            c: 1.0,
            mu: 1000.0,
            pl_xmin: 1.0,
            c_grid: DEFAULT_C_GRID.to_vec(),
            mu_grid: DEFAULT_MU_GRID.to_vec(),
            folds: 3,
            objective: Metric::Map,
            run_tag: "adrank".into(),
        }
    }
}

pub const KEYS: [&str; 17] = [
    "seed", "alpha", "criterion", "models", "gof", "stopwords", "rule", "fraction", "k", "c", "mu", "pl_xmin",
    "c_grid", "mu_grid", "folds", "objective", "run_tag",
];

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value for {key}: '{v}'")))
}

fn positive(key: &str, v: &str) -> Result<f64> {
    let x: f64 = num(key, v)?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Config(format!("{key} must be positive, got {v}")))
    }
}

pub fn parse_grid(key: &str, v: &str) -> Result<Vec<f64>> {
    let grid = v.split(',').map(|x| positive(key, x.trim())).collect::<Result<Vec<_>>>()?;
    if grid.is_empty() {
        return Err(Error::Config(format!("{key} is empty")));
    }
    Ok(grid)
}

pub fn parse_models(v: &str) -> Result<Vec<ModelId>> {
    if v.trim().eq_ignore_ascii_case("all") {
        return Ok(ModelId::ALL.to_vec());
    }
    let mut models = Vec::new();
    for m in v.split(',').map(str::trim).filter(|m| !m.is_empty()) {
        let id: ModelId = m.parse()?;
        if !models.contains(&id) {
            models.push(id);
        }
    }
    if models.is_empty() {
        return Err(Error::Config("model list is empty".into()));
    }
    Ok(models)
}

fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "seed" => self.seed = num(key, v)?,
            "alpha" => {
                let a: f64 = num(key, v)?;
                if !(a > 0.0 && a < 1.0) {
                    return Err(Error::Config(format!("alpha must lie in (0, 1), got {v}")));
                }
                self.alpha = a;
            }
            "criterion" => self.criterion = v.parse().map_err(|e: Error| Error::Config(e.to_string()))?,
            "models" => self.models = parse_models(v)?,
            "gof" => self.goodness_of_fit = num(key, v)?,
            "stopwords" => self.stopwords = (!v.is_empty()).then(|| PathBuf::from(v)),
            "rule" => self.rule = v.parse()?,
            "fraction" => {
                let f: f64 = num(key, v)?;
                if !(f > 0.0 && f <= 1.0) {
                    return Err(Error::Config(format!("fraction must lie in (0, 1], got {v}")));
                }
                self.fraction = f;
            }
            "k" => {
                self.k = num(key, v)?;
                if self.k == 0 {
                    return Err(Error::Config("k must be at least 1".into()));
                }
            }
            "c" => self.c = positive(key, v)?,
            "mu" => self.mu = positive(key, v)?,
            "pl_xmin" => self.pl_xmin = positive(key, v)?,
            "c_grid" => self.c_grid = parse_grid(key, v)?,
            "mu_grid" => self.mu_grid = parse_grid(key, v)?,
            "folds" => {
                self.folds = num(key, v)?;
                if self.folds < 2 {
                    return Err(Error::Config("folds must be at least 2".into()));
                }
            }
            "objective" => self.objective = v.parse()?,
            "run_tag" => {
                if v.is_empty() || v.contains(char::is_whitespace) {
                    return Err(Error::Config(format!("run_tag must be one non-empty word, got '{v}'")));
                }
                self.run_tag = v.to_string();
            }
            other => return Err(Error::Config(format!("unknown configuration key '{other}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected key = value: '{line}'", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Config::default();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    /// The fully resolved configuration as `key = value` lines, in a form `apply_text` accepts.
    pub fn resolved(&self) -> String {
        let mut out = String::new();
        let models: Vec<&str> = self.models.iter().map(|m| m.short_name()).collect();
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "alpha = {}", self.alpha);
        let _ = writeln!(out, "criterion = {}", self.criterion);
        let _ = writeln!(out, "models = {}", models.join(","));
        let _ = writeln!(out, "gof = {}", self.goodness_of_fit);
        let _ = writeln!(out, "stopwords = {}", self.stopwords.as_ref().map_or(String::new(), |p| p.display().to_string()));
        let _ = writeln!(out, "rule = {}", self.rule);
        let _ = writeln!(out, "fraction = {}", self.fraction);
        let _ = writeln!(out, "k = {}", self.k);
        let _ = writeln!(out, "c = {}", self.c);
        let _ = writeln!(out, "mu = {}", self.mu);
        let _ = writeln!(out, "pl_xmin = {}", self.pl_xmin);
        let _ = writeln!(out, "c_grid = {}", join(&self.c_grid));
        let _ = writeln!(out, "mu_grid = {}", join(&self.mu_grid));
        let _ = writeln!(out, "folds = {}", self.folds);
        let _ = writeln!(out, "objective = {}", self.objective);
        let _ = writeln!(out, "run_tag = {}", self.run_tag);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let mut cfg = Config::default();
        cfg.apply_text("# comment\nseed = 7\nalpha=0.01\ncriterion = hq:3\nmodels = yule, poisson\nrule = ridf < median\nc_grid = 1, 2\nobjective = ndcg@10\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.models, vec![ModelId::YuleSimon, ModelId::Poisson]);
        assert_eq!(cfg.c_grid, vec![1.0, 2.0]);
        assert_eq!(cfg.objective, Metric::Ndcg10);
        let mut again = Config::default();
        again.apply_text(&cfg.resolved()).unwrap();
        assert_eq!(again, cfg);
        let mut d = Config::default();
        d.apply_text(&Config::default().resolved()).unwrap();
        assert_eq!(d, Config::default());
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        for bad in ["colour = red", "seed = -1", "alpha = 2", "fraction = 0", "models = foo", "rule = tfidf < 1", "k = 0", "c_grid = 1,,2", "novalue"] {
            assert!(matches!(Config::default().apply_text(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn keys_are_all_settable() {
        let resolved = Config::default().resolved();
        for k in KEYS {
            assert!(resolved.lines().any(|l| l.starts_with(&format!("{k} ="))), "{k}");
        }
    }
}
