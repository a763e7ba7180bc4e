//! Variational objectives for the measured divergences.
//!
//! Every objective has the shape `a·Tr[ωA] + b·Tr[φ(ω)B] + c`:
//!
//! | kind | objective | a, A | b, φ, B | c |
//! |------|-----------|------|---------|---|
//! | relative entropy | `Tr[(ln ω)ρ] + 1 − Tr[ωσ]` | −1, σ | 1, ln, ρ | 1 |
//! | Rényi, α ∈ (0, ½) | `α Tr[ωρ] + (1−α) Tr[ω^{α/(α−1)} σ]` | α, ρ | 1−α, x^{α/(α−1)}, σ | 0 |
//! | Rényi, α ∈ [½, 1) ∪ (1, ∞) | `α Tr[ω^{(α−1)/α} ρ] + (1−α) Tr[ωσ]` | 1−α, σ | α, x^{(α−1)/α}, ρ | 0 |
//!
//! so the matrix gradient is `a·A + b·V (f^[1] ∘ V^H B V) V^H` and the Hessian
//! acts in the eigenbasis of ω through the second divided differences of φ.

use nalgebra::{Complex, DMatrix};

use crate::hermitian::{hs_inner, spectral_decompose, HermitianMatrix, ScalarFunction, SpectralDecomposition};
use crate::nesterov::{Direction, Objective};
use crate::{Error, Real, Result};

/// Distance from 1 below which a Rényi order is rejected.
pub const ALPHA_ONE_GUARD: f64 = 1e-6;
const TRACE_TOLERANCE: f64 = 1e-9;

/// Which objective is optimized, carrying the Rényi order where relevant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemKind<T: Real> {
    MeasuredRelEnt,
    /// α ∈ (0, ½): minimize g^α.
    RenyiLow(T),
    /// α ∈ [½, 1): minimize h^α.
    RenyiMid(T),
    /// α ∈ (1, ∞): maximize h^α.
    RenyiHigh(T),
}

impl<T: Real> ProblemKind<T> {
    /// Selects the Rényi branch for `alpha`.
    pub fn renyi(alpha: T) -> Result<Self> {
        let a = alpha.as_f64();
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::AlphaOutOfRange { alpha: a });
        }
        if (a - 1.0).abs() < ALPHA_ONE_GUARD {
            return Err(Error::AlphaNearOne { alpha: a });
        }
        Ok(if alpha < T::lit(0.5) {
            ProblemKind::RenyiLow(alpha)
        } else if alpha < T::one() {
            ProblemKind::RenyiMid(alpha)
        } else {
            ProblemKind::RenyiHigh(alpha)
        })
    }

    pub fn alpha(&self) -> Option<T> {
        match *self {
            ProblemKind::MeasuredRelEnt => None,
            ProblemKind::RenyiLow(a) | ProblemKind::RenyiMid(a) | ProblemKind::RenyiHigh(a) => Some(a),
        }
    }

    /// Checks that α lies strictly inside the interval of its tag.
    pub fn validate(&self) -> Result<()> {
        let Some(alpha) = self.alpha() else { return Ok(()) };
        let expected = Self::renyi(alpha)?;
        if std::mem::discriminant(&expected) != std::mem::discriminant(self) {
            return Err(Error::AlphaOutOfRange { alpha: alpha.as_f64() });
        }
        Ok(())
    }

    /// Maximization for the concave objectives, minimization for the convex ones.
    pub fn direction(&self) -> Direction {
        match self {
            ProblemKind::MeasuredRelEnt | ProblemKind::RenyiHigh(_) => Direction::Ascent,
            ProblemKind::RenyiLow(_) | ProblemKind::RenyiMid(_) => Direction::Descent,
        }
    }
}

/// A state `ρ`, a positive definite `σ`, and the objective to optimize.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance<T: Real> {
    rho: HermitianMatrix<T>,
    sigma: HermitianMatrix<T>,
    kind: ProblemKind<T>,
}

impl<T: Real> ProblemInstance<T> {
    pub fn new(rho: HermitianMatrix<T>, sigma: HermitianMatrix<T>, kind: ProblemKind<T>) -> Result<Self> {
        rho.check_same_dim(&sigma)?;
        kind.validate()?;
        let tr = rho.trace();
        if (tr - T::one()).abs() > T::lit(TRACE_TOLERANCE) {
            return Err(Error::InvalidInstance(format!("trace of rho is {} (expected 1 within 1e-9)", tr.as_f64())));
        }
        spectral_decompose(&rho)?.ensure_positive_definite()?;
        spectral_decompose(&sigma)?.ensure_positive_definite()?;
        Ok(Self { rho, sigma, kind })
    }

    pub fn rho(&self) -> &HermitianMatrix<T> {
        &self.rho
    }

    pub fn sigma(&self) -> &HermitianMatrix<T> {
        &self.sigma
    }

    pub fn kind(&self) -> ProblemKind<T> {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    /// Same matrices, different objective.
    pub fn with_kind(&self, kind: ProblemKind<T>) -> Result<Self> {
        kind.validate()?;
        Ok(Self { kind, ..self.clone() })
    }

    fn functional(&self) -> TraceFunctional<'_, T> {
        match self.kind {
            ProblemKind::MeasuredRelEnt => relative_entropy_functional(&self.rho, &self.sigma),
            ProblemKind::RenyiLow(a) => g_alpha_functional(&self.rho, &self.sigma, a),
            ProblemKind::RenyiMid(a) | ProblemKind::RenyiHigh(a) => h_alpha_functional(&self.rho, &self.sigma, a),
        }
    }

    pub fn objective(&self, omega: &HermitianMatrix<T>) -> Result<T> {
        self.functional().value(omega)
    }

    pub fn gradient(&self, omega: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        self.functional().gradient(omega)
    }

    pub fn hessian_apply(&self, omega: &HermitianMatrix<T>, x: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        self.functional().hessian_apply(omega, x)
    }
}

impl<T: Real> Objective<T> for ProblemInstance<T> {
    fn value(&self, omega: &HermitianMatrix<T>) -> Result<T> {
        self.objective(omega)
    }

    fn gradient(&self, omega: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        ProblemInstance::gradient(self, omega)
    }
}

struct TraceFunctional<'a, T: Real> {
    linear_coef: T,
    linear_op: &'a HermitianMatrix<T>,
    spectral_coef: T,
    spectral_fn: ScalarFunction<T>,
    spectral_op: &'a HermitianMatrix<T>,
    constant: T,
}

fn relative_entropy_functional<'a, T: Real>(
    rho: &'a HermitianMatrix<T>,
    sigma: &'a HermitianMatrix<T>,
) -> TraceFunctional<'a, T> {
    TraceFunctional {
        linear_coef: -T::one(),
        linear_op: sigma,
        spectral_coef: T::one(),
        spectral_fn: ScalarFunction::Log,
        spectral_op: rho,
        constant: T::one(),
    }
}

fn g_alpha_functional<'a, T: Real>(
    rho: &'a HermitianMatrix<T>,
    sigma: &'a HermitianMatrix<T>,
    alpha: T,
) -> TraceFunctional<'a, T> {
    TraceFunctional {
        linear_coef: alpha,
        linear_op: rho,
        spectral_coef: T::one() - alpha,
        spectral_fn: ScalarFunction::Power(alpha / (alpha - T::one())),
        spectral_op: sigma,
        constant: T::zero(),
    }
}

fn h_alpha_functional<'a, T: Real>(
    rho: &'a HermitianMatrix<T>,
    sigma: &'a HermitianMatrix<T>,
    alpha: T,
) -> TraceFunctional<'a, T> {
    TraceFunctional {
        linear_coef: T::one() - alpha,
        linear_op: sigma,
        spectral_coef: alpha,
        spectral_fn: ScalarFunction::Power((alpha - T::one()) / alpha),
        spectral_op: rho,
        constant: T::zero(),
    }
}

impl<T: Real> TraceFunctional<'_, T> {
    fn decompose(&self, omega: &HermitianMatrix<T>) -> Result<SpectralDecomposition<T>> {
        omega.check_same_dim(self.linear_op)?;
        let spec = spectral_decompose(omega)?;
        spec.ensure_positive_definite()?;
        Ok(spec)
    }

    fn value(&self, omega: &HermitianMatrix<T>) -> Result<T> {
        let spec = self.decompose(omega)?;
        let b = spec.to_eigenbasis(self.spectral_op);
        let mut spectral = T::zero();
        for (k, &lambda) in spec.eigenvalues.iter().enumerate() {
            spectral += self.spectral_fn.value(lambda)? * b[(k, k)].re;
        }
        let linear = hs_inner(omega, self.linear_op)?;
        Ok(self.linear_coef * linear + self.spectral_coef * spectral + self.constant)
    }

    fn gradient(&self, omega: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        let spec = self.decompose(omega)?;
        let lam = &spec.eigenvalues;
        let mut m = spec.to_eigenbasis(self.spectral_op);
        for i in 0..lam.len() {
            for j in 0..lam.len() {
                let d = self.spectral_fn.first_divided_difference(lam[i], lam[j])?;
                m[(i, j)] *= Complex::new(d * self.spectral_coef, T::zero());
            }
        }
        Ok(spec.from_eigenbasis(&m).axpy(self.linear_coef, self.linear_op))
    }

    fn hessian_apply(&self, omega: &HermitianMatrix<T>, x: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        x.check_same_dim(omega)?;
        let spec = self.decompose(omega)?;
        let lam = &spec.eigenvalues;
        let n = lam.len();
        let b = spec.to_eigenbasis(self.spectral_op);
        let xt = spec.to_eigenbasis(x);
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = DMatrix::from_element(n, n, zero);
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero;
                for c in 0..n {
                    let w = self.spectral_fn.second_divided_difference(lam[i], lam[c], lam[j])?;
                    let term = xt[(i, c)] * b[(c, j)] + b[(i, c)] * xt[(c, j)];
                    acc += term * Complex::new(w, T::zero());
                }
                out[(i, j)] = acc * Complex::new(self.spectral_coef, T::zero());
            }
        }
        Ok(spec.from_eigenbasis(&out))
    }
}

/// `h(ω) = Tr[(ln ω)ρ] + 1 − Tr[ωσ]`.
pub fn objective_h<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    omega: &HermitianMatrix<T>,
) -> Result<T> {
    relative_entropy_functional(rho, sigma).value(omega)
}

pub fn gradient_h<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    omega: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    relative_entropy_functional(rho, sigma).gradient(omega)
}

/// `g^α(ω) = α Tr[ωρ] + (1−α) Tr[ω^{α/(α−1)} σ]`.
pub fn objective_g_alpha<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    alpha: T,
    omega: &HermitianMatrix<T>,
) -> Result<T> {
    g_alpha_functional(rho, sigma, alpha).value(omega)
}

pub fn gradient_g_alpha<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    alpha: T,
    omega: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    g_alpha_functional(rho, sigma, alpha).gradient(omega)
}

/// `h^α(ω) = α Tr[ω^{(α−1)/α} ρ] + (1−α) Tr[ωσ]`.
pub fn objective_h_alpha<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    alpha: T,
    omega: &HermitianMatrix<T>,
) -> Result<T> {
    h_alpha_functional(rho, sigma, alpha).value(omega)
}

pub fn gradient_h_alpha<T: Real>(
    rho: &HermitianMatrix<T>,
    sigma: &HermitianMatrix<T>,
    alpha: T,
    omega: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    h_alpha_functional(rho, sigma, alpha).gradient(omega)
}

/// Action of the Hessian superoperator of `inst`'s objective at `omega` on `x`.
pub fn hessian_apply<T: Real>(
    inst: &ProblemInstance<T>,
    omega: &HermitianMatrix<T>,
    x: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    inst.hessian_apply(omega, x)
}
