//! Measured relative entropies of positive definite matrices.
//!
//! The measured relative entropy `D^M(ρ‖σ)` and the measured Rényi relative
//! entropy `D^M_α(ρ‖σ)` are computed by maximizing (or minimizing) a smooth,
//! strongly concave (or convex) objective over positive definite `ω` with
//! Nesterov accelerated projected gradient steps. Iteration stops once
//! `‖∇f(ω)‖₂ ≤ √(2γε)`.
//!
//! Layout:
//!
//! - [`hermitian`]: Hermitian matrices, spectral decomposition, divided
//!   differences, interval projection, Hilbert–Schmidt geometry.
//! - [`objectives`]: the variational objectives, their matrix gradients and
//!   Hessian actions.
//! - [`conditioning`]: search interval, smoothness `β`, strong convexity `γ`,
//!   condition number `κ`.
//! - [`nesterov`]: the generic accelerated projected gradient engine.
//! - [`entropies`]: top-level drivers returning [`EntropyReport`]s.
//! - [`oracles`]: independent verification tools (classical divergences,
//!   finite differences, quadrature, seeded random instances).
//!
//! All numerical code is generic over the real scalar type through the
//! [`Real`] trait; `f64` aliases are exported at the crate root.
//!
//! ```
//! use meo_core::{measured_relative_entropy, Hermitian64, SolverConfig};
//!
//! let rho = Hermitian64::from_real_diagonal(&[0.7, 0.3]).unwrap();
//! let sigma = Hermitian64::from_real_diagonal(&[0.4, 0.6]).unwrap();
//! let report = measured_relative_entropy(&rho, &sigma, &SolverConfig::new(1e-9).unwrap()).unwrap();
//! let kl = 0.7 * (0.7f64 / 0.4).ln() + 0.3 * (0.3f64 / 0.6).ln();
//! assert!((report.value - kl).abs() < 1e-7);
//! ```

pub mod conditioning;
pub mod entropies;
mod error;
pub mod hermitian;
pub mod nesterov;
pub mod objectives;
pub mod oracles;
mod scalar;

pub use conditioning::{interval_for, smoothness_for, ConditioningProfile};
pub use entropies::{measured_relative_entropy, measured_renyi, optimal_measurement_basis, EntropyReport, Quantity};
pub use error::{Error, Result};
pub use hermitian::{
    divided_difference_log, divided_difference_power, hs_inner, hs_norm, matrix_function, project_to_interval,
    spectral_decompose, weighted_operator_norm, HermitianMatrix, OperatorInterval, ScalarFunction,
    SpectralDecomposition,
};
pub use nesterov::{solve, Direction, IterationLimit, SolverConfig, SolverResult, TracePoint};
pub use objectives::{ProblemInstance, ProblemKind};
pub use scalar::Real;

pub type Hermitian64 = HermitianMatrix<f64>;
pub type Hermitian32 = HermitianMatrix<f32>;
pub type Spectral64 = SpectralDecomposition<f64>;
pub type Instance64 = ProblemInstance<f64>;
pub type Kind64 = ProblemKind<f64>;
pub type Profile64 = ConditioningProfile<f64>;
pub type Interval64 = OperatorInterval<f64>;
pub type Config64 = SolverConfig<f64>;
pub type Result64 = SolverResult<f64>;
pub type Report64 = EntropyReport<f64>;
