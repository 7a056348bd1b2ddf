use std::fmt::Write as _;

use crate::corpus::{InvertedIndex, TermStats};
use crate::{Error, Result};

/// Informativeness measures of one term (natural logarithms throughout).
#[derive(Debug, Clone, PartialEq)]
pub struct TermWeights {
    pub term: String,
    /// −ln(n_t / N)
    pub idf: f64,
    /// (n_t/N)(n_t/N − 1 − ln(n_t/N))
    pub gain: f64,
    /// f_tC − n_t
    pub x_i: f64,
    /// f_tC / n_t
    pub burstiness: f64,
    /// idf minus the idf expected under a Poisson spread of f_tC tokens.
    pub ridf: f64,
    pub collection_freq: u64,
    pub doc_freq: u64,
}

pub fn term_weights_from_stats(stats: &TermStats, num_docs: u64) -> TermWeights {
    let n = num_docs as f64;
    let u = stats.doc_freq as f64 / n;
    let idf = -u.ln();
    let expected_idf = -(-(-(stats.collection_freq as f64) / n).exp_m1()).ln();
    TermWeights {
        term: stats.term.clone(),
        idf,
        gain: u * (u - 1.0 - u.ln()),
        x_i: stats.collection_freq as f64 - stats.doc_freq as f64,
        burstiness: stats.collection_freq as f64 / stats.doc_freq as f64,
        ridf: idf - expected_idf,
        collection_freq: stats.collection_freq,
        doc_freq: stats.doc_freq,
    }
}

pub fn term_weights(term: &str, index: &InvertedIndex) -> Result<TermWeights> {
    Ok(term_weights_from_stats(index.term_stats(term)?, index.stats().num_docs))
}

/// (λ₁ − λ₂) / √(λ₁ + λ₂)
pub fn z_measure(lambda1: f64, lambda2: f64) -> Result<f64> {
    if !(lambda1 >= 0.0 && lambda2 >= 0.0 && lambda1 + lambda2 > 0.0) {
        return Err(Error::Domain(format!("z-measure needs λ₁, λ₂ ≥ 0 with a positive sum, got ({lambda1}, {lambda2})")));
    }
    Ok((lambda1 - lambda2) / (lambda1 + lambda2).sqrt())
}

/// r/R − n_t/N
pub fn rel_df(r: u64, big_r: u64, n_t: u64, num_docs: u64) -> Result<f64> {
    if big_r == 0 || r > big_r || num_docs == 0 || n_t > num_docs {
        return Err(Error::Domain(format!("RelDF undefined for r={r}, R={big_r}, n_t={n_t}, N={num_docs}")));
    }
    Ok(r as f64 / big_r as f64 - n_t as f64 / num_docs as f64)
}

/// TSV dump with a header row.
pub fn weights_tsv(weights: &[TermWeights]) -> String {
    let mut out = String::from("term\tidf\tgain\tx_i\tburstiness\tridf\tf_tC\tn_t\n");
    for w in weights {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            w.term, w.idf, w.gain, w.x_i, w.burstiness, w.ridf, w.collection_freq, w.doc_freq
        );
    }
    out
}
