//! Divergence-from-randomness scoring with adaptive randomness models, the
//! LL/SPL information models and a Dirichlet language-model baseline.

mod config;
mod models;
mod run;
mod score;

pub use config::{FirstNorm, ParamScheme, Randomness, RankingConfig, SecondNorm};
pub use models::{inf1, inf2_risk, model_parameter, normalized_tf, Risk};
pub use run::{parse_run, write_run};
pub use score::{rank, score_document, RankedList, ScoredDoc};
