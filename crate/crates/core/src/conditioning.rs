//! Search interval and curvature constants for each objective.
//!
//! With `u = ‖σ^{-1/2} ρ σ^{-1/2}‖` and `v = ‖ρ^{-1/2} σ ρ^{-1/2}‖`:
//!
//! | kind | interval | β | γ |
//! |------|----------|---|---|
//! | relative entropy | `[1/v, u]` | `λmax(ρ) v²` | `λmin(ρ) / u²` |
//! | α ∈ (0, ½) | `[u^{−(1−α)}, v^{1−α}]` | `α/(1−α) λmax(σ) u^{2−α}` | `α/(1−α) λmin(σ) v^{α−2}` |
//! | α ∈ [½, 1) ∪ (1, ∞) | `[v^{−α}, u^α]` | `\|1−α\|/α λmax(ρ) v^{α+1}` | `\|1−α\|/α λmin(ρ) u^{−(α+1)}` |

use crate::hermitian::{spectral_decompose, weighted_operator_norm, OperatorInterval};
use crate::objectives::{ProblemInstance, ProblemKind, ALPHA_ONE_GUARD};
use crate::{Error, Real, Result};

/// Interval, smoothness, strong convexity/concavity and condition number of one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditioningProfile<T: Real> {
    pub interval: OperatorInterval<T>,
    pub beta: T,
    pub gamma: T,
    pub kappa: T,
    pub kind: ProblemKind<T>,
}

impl<T: Real> ConditioningProfile<T> {
    /// Nesterov momentum coefficient `(√κ − 1)/(√κ + 1)`.
    pub fn momentum(&self) -> T {
        let s = self.kappa.sqrt();
        (s - T::one()) / (s + T::one())
    }
}

struct Norms<T> {
    /// `‖σ^{-1/2} ρ σ^{-1/2}‖`
    rho_over_sigma: T,
    /// `‖ρ^{-1/2} σ ρ^{-1/2}‖`
    sigma_over_rho: T,
}

fn norms<T: Real>(inst: &ProblemInstance<T>) -> Result<Norms<T>> {
    Ok(Norms {
        rho_over_sigma: weighted_operator_norm(inst.rho(), inst.sigma())?,
        sigma_over_rho: weighted_operator_norm(inst.sigma(), inst.rho())?,
    })
}

fn interval_from_norms<T: Real>(kind: ProblemKind<T>, n: &Norms<T>) -> Result<OperatorInterval<T>> {
    let (u, v) = (n.rho_over_sigma, n.sigma_over_rho);
    let (lo, hi) = match kind {
        ProblemKind::MeasuredRelEnt => (v.recip(), u),
        ProblemKind::RenyiLow(a) => {
            let e = T::one() - a;
            (u.powf(-e), v.powf(e))
        }
        ProblemKind::RenyiMid(a) | ProblemKind::RenyiHigh(a) => (v.powf(-a), u.powf(a)),
    };
    // u·v ≥ 1 guarantees lo ≤ hi analytically; absorb roundoff when ρ ∝ σ.
    let hi = if hi < lo && hi >= lo * (T::one() - T::lit(1e-12)) { lo } else { hi };
    OperatorInterval::new(lo, hi)
}

/// The operator interval known to contain the optimal `ω`.
pub fn interval_for<T: Real>(inst: &ProblemInstance<T>) -> Result<OperatorInterval<T>> {
    interval_from_norms(inst.kind(), &norms(inst)?)
}

pub fn smoothness_for<T: Real>(inst: &ProblemInstance<T>) -> Result<ConditioningProfile<T>> {
    let kind = inst.kind();
    if let Some(alpha) = kind.alpha() {
        if (alpha.as_f64() - 1.0).abs() < ALPHA_ONE_GUARD {
            return Err(Error::AlphaNearOne { alpha: alpha.as_f64() });
        }
    }
    kind.validate()?;
    let n = norms(inst)?;
    let interval = interval_from_norms(kind, &n)?;
    let (u, v) = (n.rho_over_sigma, n.sigma_over_rho);
    let one = T::one();
    let (beta, gamma, kappa) = match kind {
        ProblemKind::MeasuredRelEnt => {
            let s = spectral_decompose(inst.rho())?;
            let (max, min) = (s.max_eigenvalue(), s.min_eigenvalue());
            let prod = u * v;
            (max * v * v, min / (u * u), max / min * prod * prod)
        }
        ProblemKind::RenyiLow(a) => {
            let s = spectral_decompose(inst.sigma())?;
            let (max, min) = (s.max_eigenvalue(), s.min_eigenvalue());
            let c = a / (one - a);
            let two = T::lit(2.0);
            (c * max * u.powf(two - a), c * min * v.powf(a - two), max / min * (u * v).powf(two - a))
        }
        ProblemKind::RenyiMid(a) | ProblemKind::RenyiHigh(a) => {
            let s = spectral_decompose(inst.rho())?;
            let (max, min) = (s.max_eigenvalue(), s.min_eigenvalue());
            let c = (one - a).abs() / a;
            (c * max * v.powf(a + one), c * min * u.powf(-(a + one)), max / min * (u * v).powf(a + one))
        }
    };
    // κ ≥ 1 analytically; roundoff can leave it a few ulps below when ρ = σ.
    let kappa = kappa.max(one);
    Ok(ConditioningProfile { interval, beta, gamma, kappa, kind })
}
