use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("inertia operator is not symmetric positive-definite: {0}")]
    SingularInertia(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("state became non-finite at step {step}")]
    NonFiniteState { step: usize },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("factorization residual {residual:e} exceeds tolerance")]
    Factorization { residual: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("fiber derivative is not invertible")]
    SingularFiberMap,
    #[error("operation requires a quadratic energy")]
    UnsupportedEnergy,
    #[error("invalid structure data: {0}")]
    InvalidStructure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
