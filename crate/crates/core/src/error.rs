use thiserror::Error;

/// Errors raised while validating inputs or evaluating measures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("trace is {0} instead of 1")]
    TraceNotOne(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("keep set is empty")]
    EmptyKeepSet,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("party count must be at least 2, got {0}")]
    TooFewParties(usize),
    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },
    #[error("not a probability vector: {0}")]
    NotASimplexVector(String),
    #[error("state has weight outside the repeated-digit subspace (max entry {0:.3e})")]
    NotADiagonalCorrelationState(f64),
    #[error("matrix does not have orthonormal columns (deviation {0:.3e})")]
    NotAnIsometry(f64),
    #[error("isometry has {got} columns but the state has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("brute-force oracle supports rank <= 2 and dimension <= 4 (rank {rank}, dimension {dim})")]
    RankTooHigh { rank: usize, dim: usize },
    #[error("ancilla dimension {ancilla} is smaller than system dimension {system}")]
    AncillaTooSmall { ancilla: usize, system: usize },
    #[error("|r|^2 = {r2} exceeds p(1-p) = {bound}")]
    PositivityViolated { r2: f64, bound: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown measure kind `{0}`")]
    UnknownMeasure(String),
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
