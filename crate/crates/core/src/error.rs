use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: anti-Hermitian part is {relative:.3e} of the Frobenius norm")]
    NotHermitian { relative: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigenvalues {offending:?} lie outside the open interval ({lo}, {hi})")]
    SpectrumOutsideDomain { offending: Vec<f64>, lo: f64, hi: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("eigendecomposition failed to converge (dim {dim}, condition estimate {condition_estimate:e})")]
    DecompositionFailed { dim: usize, condition_estimate: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("requirements unmet: {0}")]
    RequirementsUnmet(String),

    #[error("malformed matrix document: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn unmet(msg: impl Into<String>) -> Self {
        Error::RequirementsUnmet(msg.into())
    }
}
