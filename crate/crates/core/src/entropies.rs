//! Measured relative entropy and measured Rényi relative entropy.
//!
//! Each driver builds the instance, computes its conditioning profile,
//! starts at the interval midpoint times the identity and reports the
//! objective at the final iterate.

use crate::conditioning::{smoothness_for, ConditioningProfile};
use crate::hermitian::{spectral_decompose, HermitianMatrix, SpectralDecomposition};
use crate::nesterov::{solve, SolverConfig, SolverResult};
use crate::objectives::{ProblemInstance, ProblemKind};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `D^M(ρ‖σ)`
    DM,
    /// `Q^M_α(ρ‖σ)`
    QAlpha,
    /// `D^M_α(ρ‖σ) = ln Q^M_α / (α − 1)`
    DAlpha,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport<T: Real> {
    pub quantity: Quantity,
    pub value: T,
    /// `Q^M_α` for Rényi reports.
    pub quasi_value: Option<T>,
    pub alpha: Option<T>,
    pub solver: SolverResult<T>,
    pub profile: ConditioningProfile<T>,
}

impl<T: Real> EntropyReport<T> {
    pub fn converged(&self) -> bool {
        self.solver.converged
    }

    pub fn iterations(&self) -> usize {
        self.solver.iterations
    }
}

fn run<T: Real>(
    inst: &ProblemInstance<T>,
    config: &SolverConfig<T>,
) -> Result<(SolverResult<T>, ConditioningProfile<T>)> {
    let profile = smoothness_for(inst)?;
    let init = HermitianMatrix::scaled_identity(inst.dim(), profile.interval.midpoint());
    let result = solve(inst, &profile, inst.kind().direction(), &init, config)?;
    Ok((result, profile))
}

/// `D^M(ρ‖σ) = sup_ω Tr[(ln ω)ρ] + 1 − Tr[ωσ]`.
pub fn measured_relative_entropy<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    config: &SolverConfig<T>,
) -> Result<EntropyReport<T>> {
    let inst = ProblemInstance::new(rho.clone(), sigma.clone(), ProblemKind::MeasuredRelEnt)?;
    let (solver, profile) = run(&inst, config)?;
    Ok(EntropyReport { quantity: Quantity::DM, value: solver.value, quasi_value: None, alpha: None, solver, profile })
}

/// `D^M_α(ρ‖σ)`, with `Q^M_α` in [`EntropyReport::quasi_value`].
pub fn measured_renyi<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    alpha: T,
    config: &SolverConfig<T>,
) -> Result<EntropyReport<T>> {
    let kind = ProblemKind::renyi(alpha)?;
    let inst = ProblemInstance::new(rho.clone(), sigma.clone(), kind)?;
    let (solver, profile) = run(&inst, config)?;
    let q = solver.value;
    if !q.is_finite() || q <= T::zero() {
        return Err(Error::NumericalFailure(format!("non-positive quasi-entropy {}", q.as_f64())));
    }
    Ok(EntropyReport {
        quantity: Quantity::DAlpha,
        value: q.ln() / (alpha - T::one()),
        quasi_value: Some(q),
        alpha: Some(alpha),
        solver,
        profile,
    })
}

/// Eigenbasis of the final `ω`; measuring in it attains the reported value.
pub fn optimal_measurement_basis<T: Real>(report: &EntropyReport<T>) -> Result<SpectralDecomposition<T>> {
    if !report.solver.converged {
        return Err(Error::NotConverged);
    }
    spectral_decompose(&report.solver.omega)
}

/// Outcome distributions `(⟨v_k|ρ|v_k⟩, ⟨v_k|σ|v_k⟩)` of measuring in `basis`.
pub fn induced_distributions<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    basis: &SpectralDecomposition<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    rho.check_same_dim(sigma)?;
    if basis.dim() != rho.dim() {
        return Err(Error::ShapeError {
            expected: format!("{0}x{0}", rho.dim()),
            found: format!("basis of dimension {}", basis.dim()),
        });
    }
    let diag = |a: &HermitianMatrix<T>| {
        let m = basis.to_eigenbasis(a);
        (0..m.nrows()).map(|k| m[(k, k)].re).collect::<Vec<_>>()
    };
    Ok((diag(rho), diag(sigma)))
}

/// Classical counterpart of `report` evaluated on the distributions induced by `basis`.
pub fn induced_divergence<T: Real>(
    report: &EntropyReport<T>,
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    basis: &SpectralDecomposition<T>,
) -> Result<T> {
    let (p, q) = induced_distributions(rho, sigma, basis)?;
    if p.iter().chain(&q).any(|&x| x < T::zero()) {
        return Err(Error::DomainError("negative outcome probability".into()));
    }
    let terms = p.iter().zip(&q);
    match report.alpha {
        None => {
            Ok(terms.filter(|(&pk, _)| pk > T::zero()).fold(T::zero(), |acc, (&pk, &qk)| acc + pk * (pk / qk).ln()))
        }
        Some(a) => {
            let qa = terms.fold(T::zero(), |acc, (&pk, &qk)| acc + pk.powf(a) * qk.powf(T::one() - a));
            Ok(qa.ln() / (a - T::one()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (HermitianMatrix<f64>, HermitianMatrix<f64>) {
        (
            HermitianMatrix::from_real_diagonal(&[0.7, 0.3]).unwrap(),
            HermitianMatrix::from_real_diagonal(&[0.4, 0.6]).unwrap(),
        )
    }

    fn cfg(eps: f64) -> SolverConfig<f64> {
        SolverConfig::new(eps).unwrap()
    }

    #[test]
    fn diagonal_relative_entropy() {
        let (rho, sigma) = pair();
        let r = measured_relative_entropy(&rho, &sigma, &cfg(1e-9)).unwrap();
        assert!(r.converged());
        assert!((r.value - 0.183_786_897_386_812_3).abs() < 1e-7, "{}", r.value);
    }

    #[test]
    fn equal_inputs_vanish() {
        let rho = HermitianMatrix::from_pairs(2, &[(0.6, 0.0), (0.1, 0.2), (0.1, -0.2), (0.4, 0.0)]).unwrap();
        let r = measured_relative_entropy(&rho, &rho, &cfg(1e-9)).unwrap();
        assert!(r.value.abs() < 1e-10);
        for a in [0.3, 0.5, 2.0] {
            let r = measured_renyi(&rho, &rho, a, &cfg(1e-9)).unwrap();
            assert!((r.quasi_value.unwrap() - 1.0).abs() < 1e-8);
            assert!(r.value.abs() < 1e-8);
        }
    }

    #[test]
    fn diagonal_renyi_two() {
        let (rho, sigma) = pair();
        let r = measured_renyi(&rho, &sigma, 2.0, &cfg(1e-10)).unwrap();
        assert!((r.quasi_value.unwrap() - 1.375).abs() < 1e-8);
        assert!((r.value - 1.375f64.ln()).abs() < 1e-8);
        assert!((r.value - 0.318_453_731_118_534_6).abs() < 1e-8);
    }

    #[test]
    fn diagonal_renyi_low_branch() {
        let (rho, sigma) = pair();
        let r = measured_renyi(&rho, &sigma, 0.3, &cfg(1e-10)).unwrap();
        let q = 0.7f64.powf(0.3) * 0.4f64.powf(0.7) + 0.3f64.powf(0.3) * 0.6f64.powf(0.7);
        assert!((r.quasi_value.unwrap() - q).abs() < 1e-8);
        assert!((r.value - q.ln() / -0.7).abs() < 1e-7);
        assert_eq!(r.value, r.quasi_value.unwrap().ln() / (0.3 - 1.0));
    }

    #[test]
    fn alpha_guards() {
        let (rho, sigma) = pair();
        assert!(matches!(measured_renyi(&rho, &sigma, 1.0, &cfg(1e-6)), Err(Error::AlphaNearOne { .. })));
        assert!(matches!(measured_renyi(&rho, &sigma, 0.0, &cfg(1e-6)), Err(Error::AlphaOutOfRange { .. })));
        assert!(matches!(measured_renyi(&rho, &sigma, -2.0, &cfg(1e-6)), Err(Error::AlphaOutOfRange { .. })));
    }

    #[test]
    fn diagonal_basis_is_standard() {
        let (rho, sigma) = pair();
        let r = measured_relative_entropy(&rho, &sigma, &cfg(1e-9)).unwrap();
        let basis = optimal_measurement_basis(&r).unwrap();
        for k in 0..2 {
            let col = basis.eigenvectors.column(k);
            let big = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!((big - 1.0).abs() < 1e-8);
        }
        let induced = induced_divergence(&r, &rho, &sigma, &basis).unwrap();
        assert!((induced - r.value).abs() < 2e-9 + 1e-8);
    }

    #[test]
    fn unconverged_report_has_no_basis() {
        let (rho, sigma) = pair();
        let c = cfg(1e-12).with_max_iterations(crate::nesterov::IterationLimit::Fixed(1));
        let r = measured_relative_entropy(&rho, &sigma, &c).unwrap();
        assert!(matches!(optimal_measurement_basis(&r), Err(Error::NotConverged)));
    }
}
