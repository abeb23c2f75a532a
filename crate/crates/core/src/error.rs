use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("{algorithm} did not converge after {iterations} iterations")]
    ConvergenceFailure {
        algorithm: &'static str,
        iterations: usize,
    },
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not normal (relative deviation {deviation:.3e})")]
    NotNormal { deviation: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {point} lies within {distance:.3e} of the spectrum")]
    SpectrumHit { point: String, distance: f64 },
    #[error("interval endpoint {endpoint} lies within {distance:.3e} of eigenvalue {eigenvalue}")]
    EndpointOnSpectrum {
        endpoint: f64,
        eigenvalue: f64,
        distance: f64,
    },
    #[error("AB²A ≠ BA²B (relative residual {residual:.3e})")]
    ConditionFailed { residual: f64 },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
