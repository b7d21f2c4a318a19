use thiserror::Error;

/// Every failure the toolkit reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("QR iteration did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("matrix is numerically defective: {detail}")]
    Defective { detail: String },

    #[error("matrix is singular to working precision (sigma_min/sigma_max = {ratio:e})")]
    Singular { ratio: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid node {node} for graph with {n} nodes")]
    InvalidNode { node: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("Found sink node (out-degree 0) at node {0}")]
    SinkNode(usize),

    #[error("chain is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("no positive stationary vector: {0}")]
    NoPositiveVector(String),

    #[error("sampled band matrix is rank deficient (sigma_min = {sigma_min:e}, sigma_max = {sigma_max:e})")]
    RankDeficient { sigma_min: f64, sigma_max: f64 },
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
