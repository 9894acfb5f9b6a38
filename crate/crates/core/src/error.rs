use thiserror::Error;

/// Errors raised by the numerical kernels and measure computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NonHermitianInput(f64),

    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("matrix has a negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("matrix dimension {0} exceeds the supported maximum of 64")]
    DimensionOverflow(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("amplitude vector of length {len} does not describe {n} qubits")]
    BadAmplitudeCount { n: usize, len: usize },

    #[error("invalid qubit subset: {0}")]
    BadSubset(String),

    #[error("unsupported qubit count {0} (expected 2..=6)")]
    UnsupportedN(usize),

    #[error("unsupported Hilbert-space dimension {0}")]
    UnsupportedDim(usize),

    #[error("coherence vector norm {0} exceeds 1")]
    NormTooLarge(f64),

    #[error("point at r = {0} lies on or beyond the boundary r = 1")]
    BoundaryPoint(f64),

    #[error("invalid radial range [{0}, {1}]")]
    BadRange(f64, f64),

    #[error("measure needs exactly {expected} qubits, got {got}")]
    WrongQubitCount { expected: usize, got: usize },

    #[error("invalid block sizes ({0}, {1})")]
    BadSizes(usize, usize),

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid monotone function: f(1) = {0}")]
    InvalidMcFunction(f64),

    #[error("invalid generalized Schmidt coefficients: {0}")]
    InvalidGsd(String),

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    QuadratureFailed { tol: f64, estimate: f64 },

    #[error("degenerate concurrence triangle (Heron product {0:e})")]
    InvalidTriangle(f64),

    #[error("malformed state file: {0}")]
    StateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
