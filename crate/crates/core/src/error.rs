use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("eigen/singular value backend did not converge")]
    ConvergenceFailure,

    #[error("zero vector has no Schmidt decomposition")]
    ZeroVector,

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("invalid Schmidt rank {k} (must satisfy 1 <= k <= {max})")]
    BadRank { k: usize, max: usize },

    #[error("map is not completely positive (Choi eigenvalue {eigenvalue:e})")]
    NotCompletelyPositive { eigenvalue: f64 },

    #[error("map is not hermiticity-preserving (defect {defect:e})")]
    NotHermiticityPreserving { defect: f64 },

    #[error("malformed map spec: {0}")]
    MalformedSpec(String),

    #[error("unknown zoo map `{0}`")]
    UnknownZooName(String),

    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("bad starting vector: {0}")]
    BadStart(String),
}

pub type Result<T> = std::result::Result<T, Error>;
