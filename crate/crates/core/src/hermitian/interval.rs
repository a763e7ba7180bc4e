use crate::{Error, Real, Result};

use super::{spectral_decompose, HermitianMatrix};

/// Closed interval `[lo, hi] ⊂ (0, ∞)`; the operator interval `lo·I ≤ ω ≤ hi·I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorInterval<T: Real> {
    lo: T,
    hi: T,
}

impl<T: Real> OperatorInterval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo > T::zero() && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidInterval { lo: lo.as_f64(), hi: hi.as_f64() });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) * T::lit(0.5)
    }

    pub fn clamp(&self, x: T) -> T {
        x.max(self.lo).min(self.hi)
    }

    pub fn contains(&self, x: T, tol: T) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }
}

/// Frobenius-nearest matrix with spectrum in `interval`: eigenvalues are clipped to `[lo, hi]`.
pub fn project_to_interval<T: Real>(
    a: &HermitianMatrix<T>,
    interval: &OperatorInterval<T>,
) -> Result<HermitianMatrix<T>> {
    let spec = spectral_decompose(a)?;
    if spec.eigenvalues.iter().all(|&x| x >= interval.lo && x <= interval.hi) {
        return Ok(a.clone());
    }
    Ok(spec.lift(|x| interval.clamp(x)))
}
