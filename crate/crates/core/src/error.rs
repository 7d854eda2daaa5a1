use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vectors are not orthonormal (max Gram deviation = {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("rank {rank} outside 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("invalid dimension {0}")]
    BadDimension(usize),

    #[error("fraction {0} outside [0, 1]")]
    BadFraction(f64),

    #[error("grid resolution {0} must be at least 2")]
    BadGrid(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("state vector is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix file: {0}")]
    Format(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("no reports to serialize")]
    EmptyInput,

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
