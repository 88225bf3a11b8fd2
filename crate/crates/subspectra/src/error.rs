use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("operation requires at least one arc")]
    EmptyArcSet,
    #[error("operation requires at least one edge")]
    EmptyEdgeSet,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of order {n} exceeds the limit {limit} for this routine")]
    TooLarge { n: usize, limit: usize },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("rational function does not reduce to a polynomial")]
    NotPolynomial,
    #[error("root iteration did not converge (best residual {best_residual:e})")]
    NoConvergence { best_residual: f64 },
    #[error("block dimensions inconsistent: {0}")]
    DimensionMismatch(String),
    #[error("affine transform requires a nonzero scale")]
    ZeroScale,
    #[error("digraph is not out-regular with the requested degree")]
    NotOutRegular,
    #[error("matrix kind is not supported for this product")]
    UnsupportedMatrixKind,
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal consistency failure: {0}")]
    InternalInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
