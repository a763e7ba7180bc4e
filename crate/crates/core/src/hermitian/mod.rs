//! Hermitian matrices and the spectral machinery every objective is built on.

mod divided;
mod interval;
mod matrix;
mod spectral;

pub use divided::{divided_difference_log, divided_difference_power, ScalarFunction};
pub use interval::{project_to_interval, OperatorInterval};
pub use matrix::{hs_inner, hs_norm, HermitianMatrix};
pub use spectral::{
    is_positive_definite, matrix_function, pd_threshold, spectral_decompose, weighted_operator_norm,
    SpectralDecomposition,
};

/// Relative gap below which divided differences use the derivative branch.
pub const NEAR_EQUAL_GAP: f64 = 1e-9;
