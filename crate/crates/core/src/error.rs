use std::io;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A parameter vector does not satisfy its model's constraints.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Observations fall outside the support of the model being fitted.
    #[error("support error: {0}")]
    Support(String),
    /// The sample cannot identify the model (zero variance, too few points, ...).
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    /// The optimizer could not start or failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Caller asked for something that is not defined (e.g. LR test on non-nested models).
    #[error("usage error: {0}")]
    Usage(String),
    /// Invalid configuration, rule or ranking model string.
    #[error("configuration error: {0}")]
    Config(String),
    /// Malformed or truncated input file.
    #[error("format error: {0}")]
    Format(String),
    /// A lookup for a term, document or query failed.
    #[error("not found: {0}")]
    NotFound(String),
    /// Input had no usable content.
    #[error("empty input: {0}")]
    Empty(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
