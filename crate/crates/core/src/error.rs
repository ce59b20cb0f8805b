use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (relative skew part {0:.3e})")]
    NonHermitianInput(f64),

    #[error("{routine} did not converge within {iterations} iterations")]
    ConvergenceFailure {
        routine: &'static str,
        iterations: usize,
    },

    #[error("zero vector where a unit vector is required")]
    ZeroVector,

    #[error("matrix is not unitary (||U*U - I||_F = {0:.3e})")]
    NonUnitary(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not radialoid (r = {r:.6e}, norm = {norm:.6e})")]
    NotRadialoid { r: f64, norm: f64 },

    #[error("no reducing eigenvector at the numerical-radius peak")]
    PeakNotAttained,

    #[error("matrix is not normalized (norm = {norm:.6e}, w = {w:.6e})")]
    NotNormalized { norm: f64, w: f64 },

    #[error("construction hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("all witness strategies exhausted without a certificate")]
    Inconclusive,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
