use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::measures::{term_weights_from_stats, TermWeights};
use crate::corpus::InvertedIndex;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    Idf,
    Gain,
    Xi,
    Burstiness,
    Ridf,
    CollectionFreq,
    DocFreq,
}

impl Feature {
    pub fn of(self, w: &TermWeights) -> f64 {
        match self {
            Feature::Idf => w.idf,
            Feature::Gain => w.gain,
            Feature::Xi => w.x_i,
            Feature::Burstiness => w.burstiness,
            Feature::Ridf => w.ridf,
            Feature::CollectionFreq => w.collection_freq as f64,
            Feature::DocFreq => w.doc_freq as f64,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Feature::Idf => "idf",
            Feature::Gain => "gain",
            Feature::Xi => "x_i",
            Feature::Burstiness => "burstiness",
            Feature::Ridf => "ridf",
            Feature::CollectionFreq => "f_tc",
            Feature::DocFreq => "n_t",
        }
    }
}

impl FromStr for Feature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "idf" => Feature::Idf,
            "gain" => Feature::Gain,
            "x_i" | "xi" => Feature::Xi,
            "burstiness" => Feature::Burstiness,
            "ridf" => Feature::Ridf,
            "f_tc" | "cf" => Feature::CollectionFreq,
            "n_t" | "df" => Feature::DocFreq,
            other => return Err(Error::Config(format!("unknown term feature '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Threshold {
    Value(f64),
    /// Quantile of a feature over the whole vocabulary.
    Quantile(Feature, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Const(bool),
    Cmp(Feature, Cmp, Threshold),
    Within(Feature, Threshold, Threshold),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

/// Threshold rule over per-term features.
///
/// Grammar: `[informative: | non_informative:] expr`, where
/// `expr := conj (or conj)*`, `conj := atom (and atom)*` and
/// `atom := true | false | ( expr ) | feature op threshold | feature in [threshold, threshold]`.
/// A threshold is a number, `median`, `qP` (quantile P of the same feature),
/// or `median(feature)` / `quantile(feature, P)`. Without a prefix the rule
/// selects the non-informative terms.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierRule {
    expr: Expr,
    selects_informative: bool,
    source: String,
}

impl ClassifierRule {
    pub fn all_pass() -> Self {
        ClassifierRule { expr: Expr::Const(true), selects_informative: false, source: "true".into() }
    }

    pub fn features(&self) -> HashSet<Feature> {
        fn walk(e: &Expr, out: &mut HashSet<Feature>) {
            let th = |t: &Threshold, out: &mut HashSet<Feature>| {
                if let Threshold::Quantile(f, _) = t {
                    out.insert(*f);
                }
            };
            match e {
                Expr::Const(_) => {}
                Expr::Cmp(f, _, t) => {
                    out.insert(*f);
                    th(t, out);
                }
                Expr::Within(f, a, b) => {
                    out.insert(*f);
                    th(a, out);
                    th(b, out);
                }
                Expr::And(v) | Expr::Or(v) => v.iter().for_each(|x| walk(x, out)),
            }
        }
        let mut out = HashSet::new();
        walk(&self.expr, &mut out);
        out
    }

    /// Non-informative mask over `weights`.
    pub fn non_informative_mask(&self, weights: &[TermWeights]) -> Vec<bool> {
        let resolve = |t: &Threshold| match *t {
            Threshold::Value(v) => v,
            Threshold::Quantile(f, p) => quantile(weights.iter().map(|w| f.of(w)).collect(), p),
        };
        let resolved = resolve_expr(&self.expr, &resolve);
        weights.iter().map(|w| eval(&resolved, w) != self.selects_informative).collect()
    }
}

fn resolve_expr(e: &Expr, r: &dyn Fn(&Threshold) -> f64) -> Expr {
    match e {
        Expr::Const(b) => Expr::Const(*b),
        Expr::Cmp(f, c, t) => Expr::Cmp(*f, *c, Threshold::Value(r(t))),
        Expr::Within(f, a, b) => Expr::Within(*f, Threshold::Value(r(a)), Threshold::Value(r(b))),
        Expr::And(v) => Expr::And(v.iter().map(|x| resolve_expr(x, r)).collect()),
        Expr::Or(v) => Expr::Or(v.iter().map(|x| resolve_expr(x, r)).collect()),
    }
}

fn value(t: &Threshold) -> f64 {
    match t {
        Threshold::Value(v) => *v,
        Threshold::Quantile(..) => unreachable!("thresholds are resolved before evaluation"),
    }
}

fn eval(e: &Expr, w: &TermWeights) -> bool {
    match e {
        Expr::Const(b) => *b,
        Expr::Cmp(f, c, t) => {
            let (x, t) = (f.of(w), value(t));
            match c {
                Cmp::Lt => x < t,
                Cmp::Le => x <= t,
                Cmp::Gt => x > t,
                Cmp::Ge => x >= t,
            }
        }
        Expr::Within(f, a, b) => {
            let x = f.of(w);
            x >= value(a) && x <= value(b)
        }
        Expr::And(v) => v.iter().all(|x| eval(x, w)),
        Expr::Or(v) => v.iter().any(|x| eval(x, w)),
    }
}

/// Linear-interpolation quantile of the sorted values.
fn quantile(mut v: Vec<f64>, p: f64) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let h = p * (v.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

impl fmt::Display for ClassifierRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for ClassifierRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let source = s.trim().to_string();
        let mut body = source.as_str();
        let mut selects_informative = false;
        if let Some((head, rest)) = body.split_once(':') {
            match head.trim().to_ascii_lowercase().as_str() {
                "informative" => selects_informative = true,
                "non_informative" | "noninformative" | "non-informative" => {}
                other => return Err(Error::Config(format!("unknown rule target '{other}'"))),
            }
            body = rest;
        }
        let tokens = lex(body)?;
        let mut p = Parser { tokens, pos: 0 };
        let expr = p.disjunction()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Config(format!("trailing input in rule '{source}'")));
        }
        Ok(ClassifierRule { expr, selects_informative, source })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(f64),
    Op(Cmp),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if "()[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c == '<' || c == '>' {
            let eq = chars.get(i + 1) == Some(&'=');
            out.push(Tok::Op(match (c, eq) {
                ('<', false) => Cmp::Lt,
                ('<', true) => Cmp::Le,
                ('>', false) => Cmp::Gt,
                _ => Cmp::Ge,
            }));
            i += 1 + eq as usize;
        } else if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' {
            let start = i;
            i += 1;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '.' || ((chars[i] == '-' || chars[i] == '+') && matches!(chars[i - 1], 'e' | 'E')))
            {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse().map_err(|_| Error::Config(format!("bad number '{text}' in rule")))?;
            out.push(Tok::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push(Tok::Word(chars[start..i].iter().collect::<String>().to_ascii_lowercase()));
        } else if c == '&' || c == '|' {
            let doubled = chars.get(i + 1) == Some(&c);
            out.push(Tok::Word(if c == '&' { "and" } else { "or" }.into()));
            i += 1 + doubled as usize;
        } else {
            return Err(Error::Config(format!("unexpected character '{c}' in rule")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Config("rule ends unexpectedly".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next()? {
            Tok::Sym(s) if s == c => Ok(()),
            t => Err(Error::Config(format!("expected '{c}' in rule, found {t:?}"))),
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn disjunction(&mut self) -> Result<Expr> {
        let mut parts = vec![self.conjunction()?];
        while self.keyword("or") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Expr> {
        let mut parts = vec![self.atom()?];
        while self.keyword("and") {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::And(parts) })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next()? {
            Tok::Sym('(') => {
                let e = self.disjunction()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Word(w) if w == "true" || w == "all" => Ok(Expr::Const(true)),
            Tok::Word(w) if w == "false" || w == "none" => Ok(Expr::Const(false)),
            Tok::Word(w) => {
                let feature: Feature = w.parse()?;
                if self.keyword("in") {
                    self.expect('[')?;
                    let lo = self.threshold(feature)?;
                    self.expect(',')?;
                    let hi = self.threshold(feature)?;
                    self.expect(']')?;
                    return Ok(Expr::Within(feature, lo, hi));
                }
                match self.next()? {
                    Tok::Op(c) => Ok(Expr::Cmp(feature, c, self.threshold(feature)?)),
                    t => Err(Error::Config(format!("expected a comparison after '{}', found {t:?}", feature.name()))),
                }
            }
            t => Err(Error::Config(format!("unexpected token {t:?} in rule"))),
        }
    }

    fn threshold(&mut self, own: Feature) -> Result<Threshold> {
        match self.next()? {
            Tok::Num(v) => Ok(Threshold::Value(v)),
            Tok::Word(w) if w == "median" || w == "quantile" => {
                let median = w == "median";
                if !matches!(self.peek(), Some(Tok::Sym('('))) {
                    return if median { Ok(Threshold::Quantile(own, 0.5)) } else { Err(Error::Config("quantile needs arguments".into())) };
                }
                self.expect('(')?;
                let feature = match self.next()? {
                    Tok::Word(f) => f.parse()?,
                    t => return Err(Error::Config(format!("expected a feature name, found {t:?}"))),
                };
                let p = if median {
                    0.5
                } else {
                    self.expect(',')?;
                    match self.next()? {
                        Tok::Num(p) => p,
                        t => return Err(Error::Config(format!("expected a probability, found {t:?}"))),
                    }
                };
                self.expect(')')?;
                check_prob(p)?;
                Ok(Threshold::Quantile(feature, p))
            }
            Tok::Word(w) if w.starts_with('q') => {
                let p: f64 = w[1..].parse().map_err(|_| Error::Config(format!("bad quantile '{w}'")))?;
                check_prob(p)?;
                Ok(Threshold::Quantile(own, p))
            }
            t => Err(Error::Config(format!("expected a threshold, found {t:?}"))),
        }
    }
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!("quantile probability {p} outside [0, 1]")))
    }
}

/// Partition of the vocabulary; both lists are sorted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Classification {
    pub informative: Vec<String>,
    pub non_informative: Vec<String>,
}

pub fn classify_terms(index: &InvertedIndex, rule: &ClassifierRule) -> Classification {
    let n = index.stats().num_docs;
    let weights: Vec<TermWeights> = index.terms().iter().map(|e| term_weights_from_stats(&e.stats, n)).collect();
    let mask = rule.non_informative_mask(&weights);
    let mut out = Classification::default();
    for (w, non) in weights.into_iter().zip(mask) {
        if non {
            out.non_informative.push(w.term);
        } else {
            out.informative.push(w.term);
        }
    }
    out
}

/// Partition from an externally produced non-informative list. Listed terms
/// absent from the index are ignored.
pub fn classify_from_list(index: &InvertedIndex, non_informative: &[String]) -> Classification {
    let listed: HashSet<&str> = non_informative.iter().map(String::as_str).collect();
    let mut out = Classification::default();
    for e in index.terms().iter() {
        if listed.contains(e.stats.term.as_str()) {
            out.non_informative.push(e.stats.term.clone());
        } else {
            out.informative.push(e.stats.term.clone());
        }
    }
    out
}

pub fn read_term_list(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)?;
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect())
}

pub fn write_term_list(path: &Path, terms: &[String]) -> Result<()> {
    let mut text = terms.join("\n");
    if !terms.is_empty() {
        text.push('\n');
    }
    Ok(std::fs::write(path, text)?)
}
