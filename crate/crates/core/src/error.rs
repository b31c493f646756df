use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slope (0,0) is not a curve")]
    ZeroVector,
    #[error("invalid lens space L({p},{q})")]
    InvalidLens { p: u32, q: u32 },
    #[error("invalid 2-bridge fraction {p}/{q}")]
    InvalidFraction { p: u32, q: u32 },
    #[error("malformed piece: {0}")]
    MalformedPiece(String),
    #[error("malformed assembly: {0}")]
    MalformedAssembly(String),
    #[error("assembly fails validation: {0}")]
    Invalid(ValidationReport),
    #[error("cell complex needs {needed} cells, budget is {budget}")]
    BoundExceeded { needed: usize, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("trace rejected at rank {rank}: {rule}")]
    ViolationAt { rank: u32, rule: String },
}
