//! The adaptive-ranking cascade: identify non-informative terms, subsample
//! their collection frequencies, select the best-fitting model and turn it
//! into a ranking configuration.

use crate::corpus::InvertedIndex;
use crate::distributions::{FittedModel, ModelId, Sample};
use crate::empirics::{subsample, SubsampleMethod};
use crate::numerics::RandomSource;
use crate::selection::{build_vuong_table, select_best, Selection, SelectionOptions, VuongTable};
use crate::weighting::{classify_from_list, classify_terms, Classification, ClassifierRule};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum TermSource {
    Rule(ClassifierRule),
    /// Externally produced non-informative term list.
    List(Vec<String>),
}

/// Which winner of the Vuong table the cascade adopts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionScope {
    Overall,
    Discrete,
}

#[derive(Debug, Clone)]
pub struct CascadeOptions {
    pub terms: TermSource,
    pub fraction: f64,
    pub method: SubsampleMethod,
    pub models: Vec<ModelId>,
    pub selection: SelectionOptions,
    pub scope: SelectionScope,
    pub seed: u64,
}

impl Default for CascadeOptions {
    fn default() -> Self {
        Self {
            terms: TermSource::Rule(DEFAULT_RULE.parse().expect("default rule parses")),
            fraction: 0.1,
            method: SubsampleMethod::Simple,
            models: ModelId::ALL.to_vec(),
            selection: SelectionOptions::default(),
            scope: SelectionScope::Discrete,
            seed: 42,
        }
    }
}

pub const DEFAULT_RULE: &str = "ridf < 0.5";

#[derive(Debug, Clone)]
pub struct CascadeResult {
    pub classification: Classification,
    pub population: usize,
    pub subsample_size: usize,
    pub table: VuongTable,
    pub selection: Selection,
    pub chosen: FittedModel,
    /// Compact ranking spec using the fitted parameter, when the chosen
    /// model has a matching model of randomness.
    pub ranking_spec: Option<String>,
}

pub fn run_cascade(index: &InvertedIndex, options: &CascadeOptions) -> Result<CascadeResult> {
    if !(options.fraction > 0.0 && options.fraction <= 1.0) {
        return Err(Error::Usage(format!("fraction must lie in (0, 1], got {}", options.fraction)));
    }
    let classification = match &options.terms {
        TermSource::Rule(rule) => classify_terms(index, rule),
        TermSource::List(list) => classify_from_list(index, list),
    };
    if classification.non_informative.is_empty() {
        return Err(Error::Empty("no term was classified as non-informative".into()));
    }
    let freqs: Vec<f64> = classification
        .non_informative
        .iter()
        .map(|t| index.term(t).expect("classified terms come from the index").stats.collection_freq as f64)
        .collect();
    let mut rng = RandomSource::new(options.seed);
    let picked = subsample(&freqs, &options.method, options.fraction, &mut rng)?;
    let sample = Sample::discrete(picked)?;
    let table = build_vuong_table(&sample, &options.models, &options.selection)?;
    let selection = select_best(&table);
    let model = match options.scope {
        SelectionScope::Overall => selection.overall,
        SelectionScope::Discrete => selection
            .discrete
            .ok_or_else(|| Error::Numerical("no discrete model could be fitted".into()))?,
    };
    let chosen = table.report(model).expect("selected model has a report").fit.clone();
    let ranking_spec = ranking_spec_for(&chosen);
    Ok(CascadeResult {
        population: freqs.len(),
        subsample_size: sample.len(),
        classification,
        table,
        selection,
        chosen,
        ranking_spec,
    })
}

/// `YSL2-p`, `PLL2-α`, `PL2-λ` or `GL2-λ` from a fitted model.
pub fn ranking_spec_for(fit: &FittedModel) -> Option<String> {
    let v = fit.params.values();
    match fit.model {
        ModelId::YuleSimon => Some(format!("YSL2-{}", v[0])),
        ModelId::PowerLaw if v[0] > 1.0 => Some(format!("PLL2-{}", v[0])),
        ModelId::Poisson => Some(format!("PL2-{}", v[0])),
        ModelId::Geometric => Some(format!("GL2-{}", (1.0 - v[0]) / v[0])),
        _ => None,
    }
}
