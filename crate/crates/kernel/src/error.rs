use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(u32, u32),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate simplex (zero volume)")]
    DegenerateSimplex,
    #[error("negatively oriented simplex")]
    NegativeOrientation,
    #[error("face {0} is not contained in {1}")]
    NotNested(String, String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("form is not trace-free: {0}")]
    NotTraceFree(String),
    #[error("nonzero residual after bubble sweep: {0}")]
    ResidualNonzero(String),
    #[error("empty dual space for r={r}, k={k}")]
    EmptyDualSpace { r: i64, k: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
