//! Independent reference computations for testing the solvers.
//!
//! Everything here works in `f64` and avoids the code paths it is meant to
//! check. Quadrature Hessians invert `ω + tI` by LU rather than going
//! through the eigendecomposition.

mod classical;
mod finite_diff;
mod quadrature;
mod random;

pub use classical::{
    classical_kl, classical_renyi, classical_renyi_q, eigenbasis_distributions, max_relative_entropy,
    umegaki_relative_entropy, ProbabilityVector,
};
pub use finite_diff::finite_diff_gradient;
pub use quadrature::{
    check_integral_identities, integrate_power_weighted, quadrature_hessian, Estimate, IdentityCheck, IdentityKind,
    IdentityReport, Quadrature,
};
pub use random::{
    random_hermitian, random_instance, random_state, random_unitary, Conditioning, InstanceSpec, PRNG_NAME,
};
