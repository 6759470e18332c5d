use thiserror::Error;

use crate::graphs::FertileGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field must be finite and positive, got ({0}, {1})")]
    NonFiniteInput(f64, f64),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("no sign change of the symmetric equation on [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("failed to converge: {0}")]
    ConvergenceFailure(String),

    #[error("unsupported case: graph {graph}, k = {k}")]
    UnsupportedCase { graph: FertileGraph, k: u32 },

    #[error("convexity violated at {} grid point(s), first at x = {}", .0.len(), .0.first().copied().unwrap_or(f64::NAN))]
    ConvexityViolation(Vec<f64>),

    #[error("configuration space too large: 3^{vertices} exceeds the enumeration limit")]
    TooLarge { vertices: usize },

    #[error("no admissible configuration exists")]
    EmptySupport,

    #[error("invalid tree depth {depth}: {reason}")]
    InvalidDepth { depth: usize, reason: &'static str },

    #[error("boundary weights must be finite and positive")]
    InvalidWeights,
}

pub type Result<T> = std::result::Result<T, Error>;
