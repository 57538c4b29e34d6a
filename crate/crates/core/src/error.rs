use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid ring map: {0}")]
    InvalidRingMap(String),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("invalid bimodule map: {0}")]
    InvalidBimoduleMap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension cap exceeded while building {what}: {dim} > {cap}")]
    DimensionCap { what: String, dim: usize, cap: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
