use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("site ({row}, {col}) is outside a {rows}x{cols} lattice")]
    SiteOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("domain: {0}")]
    Domain(String),
    #[error("tolerance exceeded: {0}")]
    Tolerance(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("singular bias: modified offset vanishes at qubit {0}")]
    SingularBias(usize),
    #[error("size limit: {0}")]
    Size(String),
    #[error("convergence: {0}")]
    Convergence(String),
    #[error("subspace: {0}")]
    Subspace(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Numerical failures map to exit code 2, everything else to 1.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence(_) | Error::Tolerance(_))
    }
}
