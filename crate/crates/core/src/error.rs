use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigensolver failed to converge: {0}")]
    NumericalFailure(String),
    #[error("argument outside the function domain: {0}")]
    DomainError(String),
    #[error("matrix is not positive definite: minimum eigenvalue {min_eigenvalue:e} <= threshold {threshold:e}")]
    NotPositiveDefinite { min_eigenvalue: f64, threshold: f64 },
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeError { expected: String, found: String },
    #[error("invalid operator interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid problem instance: {0}")]
    InvalidInstance(String),
    #[error("alpha = {alpha} is too close to 1 (|alpha - 1| < 1e-6)")]
    AlphaNearOne { alpha: f64 },
    #[error("alpha = {alpha} is outside (0, 1) U (1, inf)")]
    AlphaOutOfRange { alpha: f64 },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("iteration cap of {iterations} reached with gradient norm {grad_norm:e} > {threshold:e}")]
    IterationCapExceeded { iterations: usize, grad_norm: f64, threshold: f64 },
    #[error("solver did not converge; no optimal measurement available")]
    NotConverged,
    #[error("finite-difference step {step:e} too large for minimum eigenvalue {min_eigenvalue:e}")]
    StepTooLarge { step: f64, min_eigenvalue: f64 },
    #[error("quadrature did not reach tolerance: estimated error {error:e}")]
    QuadratureNonConvergence { error: f64 },
}
