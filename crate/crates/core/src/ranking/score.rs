use std::cmp::Ordering;

use super::config::{Randomness, RankingConfig};
use super::models::{inf1, inf2_risk, model_parameter, normalized_tf};
use crate::corpus::{CorpusStats, InvertedIndex, QueryRecord, TermEntry};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDoc {
    pub doc_id: String,
    pub score: f64,
}

/// Top-k documents, by descending score and then ascending doc id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankedList {
    pub query_id: String,
    pub entries: Vec<ScoredDoc>,
    pub warnings: Vec<String>,
}

/// Distinct query terms with their query frequencies, in first-occurrence order.
fn query_bag(query: &QueryRecord) -> Result<Vec<(&str, f64)>> {
    if query.terms.is_empty() {
        return Err(Error::Usage(format!("query '{}' has no terms", query.query_id)));
    }
    let mut bag: Vec<(&str, f64)> = Vec::new();
    for t in &query.terms {
        match bag.iter_mut().find(|(s, _)| *s == t.as_str()) {
            Some((_, n)) => *n += 1.0,
            None => bag.push((t.as_str(), 1.0)),
        }
    }
    Ok(bag)
}

struct Scorer<'a> {
    config: &'a RankingConfig,
    stats: CorpusStats,
    clamped: usize,
}

impl Scorer<'_> {
    /// Contribution of one query term in one document, before the f_tq multiplier.
    fn term_score(&mut self, entry: &TermEntry, f_td: u32, doc_len: u64) -> Result<f64> {
        let cfg = self.config;
        if cfg.randomness == Randomness::LMDir {
            let p_c = entry.stats.collection_freq as f64 / self.stats.total_terms as f64;
            return Ok(((f_td as f64 + cfg.mu * p_c) / (doc_len as f64 + cfg.mu)).ln());
        }
        let f_hat = normalized_tf(f_td as u64, doc_len, self.stats.avg_doc_len, cfg.second_norm);
        let param = model_parameter(cfg.param_scheme, &entry.stats, &self.stats);
        let info = inf1(cfg.randomness, f_hat, param, cfg.pl_xmin, &entry.stats, &self.stats)?;
        let risk = inf2_risk(cfg.first_norm, f_hat, &entry.stats)?;
        self.clamped += risk.clamped as usize;
        Ok(info * risk.value)
    }
}

/// R(q, d) for one document.
pub fn score_document(query: &QueryRecord, doc_id: &str, index: &InvertedIndex, config: &RankingConfig) -> Result<f64> {
    config.validate()?;
    let doc = index.doc_index(doc_id).ok_or_else(|| Error::NotFound(format!("document '{doc_id}'")))?;
    let doc_len = index.doc_len(doc);
    let mut scorer = Scorer { config, stats: index.stats(), clamped: 0 };
    let mut score = 0.0;
    for (term, qf) in query_bag(query)? {
        let Some(entry) = index.term(term) else { continue };
        let f_td = index.term_frequency(term, doc);
        if f_td == 0 && config.randomness != Randomness::LMDir {
            continue;
        }
        score += qf * scorer.term_score(entry, f_td, doc_len)?;
    }
    Ok(score)
}

/// Scores the candidate documents and keeps the top `k`. DFR models score
/// documents containing at least one query term; LMDir scores every document.
pub fn rank(query: &QueryRecord, index: &InvertedIndex, config: &RankingConfig, k: usize) -> Result<RankedList> {
    if k == 0 {
        return Err(Error::Usage("k must be at least 1".into()));
    }
    config.validate()?;
    let bag = query_bag(query)?;
    let mut scorer = Scorer { config, stats: index.stats(), clamped: 0 };
    let mut warnings = Vec::new();
    let num_docs = index.num_docs();
    let mut acc = vec![0.0f64; num_docs];
    let mut touched = vec![config.randomness == Randomness::LMDir; num_docs];
    let lengths = index.doc_lengths();
    for (term, qf) in bag {
        let Some(entry) = index.term(term) else {
            warnings.push(format!("query term '{term}' does not occur in the collection; skipped"));
            continue;
        };
        if config.randomness == Randomness::LMDir {
            // Walk every document so sums run over terms in the same order as score_document.
            let mut postings = entry.postings.iter().peekable();
            for (d, slot) in acc.iter_mut().enumerate() {
                let f_td = match postings.peek() {
                    Some(p) if p.doc as usize == d => postings.next().unwrap().tf,
                    _ => 0,
                };
                *slot += qf * scorer.term_score(entry, f_td, lengths[d])?;
            }
        } else {
            for p in &entry.postings {
                let d = p.doc as usize;
                acc[d] += qf * scorer.term_score(entry, p.tf, lengths[d])?;
                touched[d] = true;
            }
        }
    }
    if scorer.clamped > 0 {
        warnings.push(format!("Bernoulli risk clamped to [0, 1] for {} term-document pairs", scorer.clamped));
    }
    let mut hits: Vec<(u32, f64)> =
        (0..num_docs).filter(|&d| touched[d]).map(|d| (d as u32, acc[d])).collect();
    if let Some((d, s)) = hits.iter().find(|(_, s)| !s.is_finite()) {
        return Err(Error::Numerical(format!("non-finite score {s} for document '{}'", index.doc_id(*d))));
    }
    // Internal doc numbers follow ascending doc id, so they break ties directly.
    let order = |a: &(u32, f64), b: &(u32, f64)| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0));
    if hits.len() > k {
        hits.select_nth_unstable_by(k - 1, order);
        hits.truncate(k);
    }
    hits.sort_unstable_by(order);
    Ok(RankedList {
        query_id: query.query_id.clone(),
        entries: hits.into_iter().map(|(d, score)| ScoredDoc { doc_id: index.doc_id(d).to_string(), score }).collect(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_index, TokenizerConfig};

    fn index(docs: &[(&str, &str)]) -> InvertedIndex {
        build_index(docs.iter().map(|(a, b)| (a.to_string(), b.to_string())), &TokenizerConfig::default()).unwrap()
    }

    fn query(text: &str) -> QueryRecord {
        QueryRecord::new("q", text, &TokenizerConfig::default()).unwrap()
    }

    /// ln Γ by the Stirling series after shifting the argument past 20.
    fn ln_gamma_stirling(mut x: f64) -> f64 {
        let mut shift = 0.0;
        while x < 20.0 {
            shift += x.ln();
            x += 1.0;
        }
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
    }

    #[test]
    fn yule_laplace_hand_case() {
        let idx = index(&[("d1", "a b a"), ("d2", "b c")]);
        let cfg = RankingConfig::parse_spec("YSL2-1.627").unwrap();
        let p: f64 = 1.627;
        let f_hat = 2.0 * (1.0f64 + 2.5 / 3.0).log2();
        assert!((f_hat - 1.748938).abs() < 1e-6);
        let ln_pmf = p.ln() + ln_gamma_stirling(f_hat) + ln_gamma_stirling(p + 1.0) - ln_gamma_stirling(f_hat + p + 1.0);
        let expected = -ln_pmf / std::f64::consts::LN_2 / (f_hat + 1.0);
        let got = score_document(&query("a"), "d1", &idx, &cfg).unwrap();
        assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");
        assert_eq!(score_document(&query("a"), "d2", &idx, &cfg).unwrap(), 0.0);
        let list = rank(&query("a"), &idx, &cfg, 10).unwrap();
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].score, got);
    }

    #[test]
    fn higher_frequency_scores_higher() {
        let idx = index(&[("d1", "a x x x x"), ("d2", "a a a a a"), ("d3", "y y")]);
        let cfg = RankingConfig::parse_spec("YSL2-Tdc").unwrap();
        let low = score_document(&query("a"), "d1", &idx, &cfg).unwrap();
        let high = score_document(&query("a"), "d2", &idx, &cfg).unwrap();
        assert!(high > low, "{high} vs {low}");
    }

    #[test]
    fn single_holder_ranks_first_everywhere() {
        let idx = index(&[("d1", "common words here"), ("d2", "common rare words"), ("d3", "common words")]);
        for spec in ["PL2-Tdc", "GL2-Ttc", "InL2", "IFB2-Tdc", "IneL1", "YSL2-Tdc2", "PLL2", "LL2-Tdc", "SPL2-Tdc"] {
            let cfg = RankingConfig::parse_spec(spec).unwrap();
            let list = rank(&query("rare"), &idx, &cfg, 1000).unwrap();
            assert_eq!(list.entries.len(), 1, "{spec}");
            assert_eq!(list.entries[0].doc_id, "d2", "{spec}");
        }
    }

    #[test]
    fn rank_agrees_with_score_document() {
        let idx = index(&[
            ("a", "the cat sat on the mat"),
            ("b", "the dog chased the cat the end"),
            ("c", "a bird"),
            ("d", "cat cat cat dog"),
            ("e", "mat"),
        ]);
        let q = query("the cat cat dog zebra");
        for spec in ["PL2-Tdc", "YSL2-Tdc2", "IFB2-Ttc", "LL2-Ttc", "SPL2-Tdc", "PLL2-Ttc+1"] {
            let cfg = RankingConfig::parse_spec(spec).unwrap();
            let list = rank(&q, &idx, &cfg, 3).unwrap();
            assert_eq!(list.entries.len(), 3);
            assert!(list.warnings.iter().any(|w| w.contains("zebra")));
            for e in &list.entries {
                assert_eq!(e.score, score_document(&q, &e.doc_id, &idx, &cfg).unwrap(), "{spec}");
            }
            assert!(list.entries.windows(2).all(|w| w[0].score >= w[1].score));
            assert_eq!(rank(&q, &idx, &cfg, 3).unwrap(), list);
        }
        let lm = RankingConfig::lm_dirichlet(100.0).unwrap();
        let list = rank(&q, &idx, &lm, 100).unwrap();
        assert_eq!(list.entries.len(), 5);
        for e in &list.entries {
            assert_eq!(e.score, score_document(&q, &e.doc_id, &idx, &lm).unwrap());
        }
    }

    #[test]
    fn lm_dirichlet_hand_value() {
        let idx = index(&[("d1", "a b a"), ("d2", "b c")]);
        let cfg = RankingConfig::lm_dirichlet(10.0).unwrap();
        let got = score_document(&query("a b"), "d2", &idx, &cfg).unwrap();
        let expected = ((0.0 + 10.0 * 2.0 / 5.0) / 12.0f64).ln() + ((1.0 + 10.0 * 2.0 / 5.0) / 12.0f64).ln();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn ties_break_by_doc_id() {
        let idx = index(&[("z", "t u"), ("m", "t u"), ("a", "t u"), ("q", "v")]);
        let cfg = RankingConfig::parse_spec("InL2").unwrap();
        let list = rank(&query("t"), &idx, &cfg, 2).unwrap();
        let ids: Vec<&str> = list.entries.iter().map(|e| e.doc_id.as_str()).collect();
        assert_eq!(ids, ["a", "m"]);
    }

    #[test]
    fn query_frequency_multiplies() {
        let idx = index(&[("d1", "a b a"), ("d2", "b c")]);
        let cfg = RankingConfig::parse_spec("PL2-Ttc").unwrap();
        let once = score_document(&query("a"), "d1", &idx, &cfg).unwrap();
        let twice = score_document(&query("a a"), "d1", &idx, &cfg).unwrap();
        assert!((twice - 2.0 * once).abs() < 1e-12);
    }

    #[test]
    fn errors_and_flags() {
        let idx = index(&[("d1", "a b a"), ("d2", "b c")]);
        let cfg = RankingConfig::parse_spec("PL2").unwrap();
        assert!(matches!(score_document(&query("a"), "nope", &idx, &cfg), Err(Error::NotFound(_))));
        assert!(rank(&query("a"), &idx, &cfg, 0).is_err());
        let empty = QueryRecord { query_id: "e".into(), terms: vec![], raw_text: String::new() };
        assert!(rank(&empty, &idx, &cfg, 5).is_err());
        // a: f_tC = 4, n_t = 2 gives a negative Bernoulli estimate in d2.
        let bursty = index(&[("d1", "a a a"), ("d2", "a b")]);
        let bern = RankingConfig::parse_spec("PB0-Ttc").unwrap();
        let list = rank(&query("a"), &bursty, &bern, 5).unwrap();
        assert!(list.warnings.iter().any(|w| w.contains("clamped")));
        let bad = RankingConfig::parse_spec("YSL2-0").unwrap_or_else(|_| unreachable!());
        assert!(matches!(rank(&query("a"), &idx, &bad, 5), Err(Error::Config(_))));
    }
}
