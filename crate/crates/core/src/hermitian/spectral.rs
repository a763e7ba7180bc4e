use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Complex, DMatrix};

use crate::{Error, Real, Result};

use super::{HermitianMatrix, ScalarFunction};

const MAX_EIGEN_SWEEPS: usize = 10_000;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T: Real> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: DMatrix<Complex<T>>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `V diag(f(λ)) V^H`.
    pub fn lift<F: Fn(T) -> T>(&self, f: F) -> HermitianMatrix<T> {
        let values: Vec<T> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.with_eigenvalues(&values)
    }

    /// `V diag(values) V^H`.
    pub fn with_eigenvalues(&self, values: &[T]) -> HermitianMatrix<T> {
        debug_assert_eq!(values.len(), self.dim());
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, &fk) in values.iter().enumerate() {
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= fk);
        }
        HermitianMatrix::symmetrized(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> HermitianMatrix<T> {
        self.lift(|x| x)
    }

    /// `V^H A V`: the matrix `A` written in this eigenbasis.
    pub fn to_eigenbasis(&self, a: &HermitianMatrix<T>) -> DMatrix<Complex<T>> {
        self.eigenvectors.adjoint() * a.as_matrix() * &self.eigenvectors
    }

    /// `V M V^H` for a Hermitian `M` expressed in this eigenbasis.
    pub fn from_eigenbasis(&self, m: &DMatrix<Complex<T>>) -> HermitianMatrix<T> {
        HermitianMatrix::symmetrized(&self.eigenvectors * m * self.eigenvectors.adjoint())
    }

    pub fn ensure_positive_definite(&self) -> Result<()> {
        let threshold = pd_threshold(self.max_eigenvalue());
        let min = self.min_eigenvalue();
        if min > threshold {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite { min_eigenvalue: min.as_f64(), threshold: threshold.as_f64() })
        }
    }
}

/// Positive definiteness threshold `1e-12 · max(1, λ_max)`.
pub fn pd_threshold<T: Real>(max_eigenvalue: T) -> T {
    T::lit(1e-12) * T::one().max(max_eigenvalue)
}

pub fn spectral_decompose<T: Real>(a: &HermitianMatrix<T>) -> Result<SpectralDecomposition<T>> {
    let eps = <T as approx::AbsDiffEq>::default_epsilon();
    let eig = SymmetricEigen::try_new(a.as_matrix().clone(), eps, MAX_EIGEN_SWEEPS)
        .ok_or_else(|| Error::NumericalFailure(format!("{0}x{0} Hermitian eigenproblem", a.dim())))?;
    let mut order: Vec<usize> = (0..a.dim()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap_or(std::cmp::Ordering::Equal));
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericalFailure("non-finite eigenvalue".into()));
    }
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_fn(a.dim(), a.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

pub fn is_positive_definite<T: Real>(a: &HermitianMatrix<T>) -> Result<bool> {
    Ok(spectral_decompose(a)?.ensure_positive_definite().is_ok())
}

/// Lifts a scalar function to `a` through its spectral decomposition.
pub fn matrix_function<T: Real>(a: &HermitianMatrix<T>, f: ScalarFunction<T>) -> Result<HermitianMatrix<T>> {
    let spec = spectral_decompose(a)?;
    if f.needs_positive_definite() {
        spec.ensure_positive_definite()?;
    }
    let values = spec.eigenvalues.iter().map(|&x| f.value(x)).collect::<Result<Vec<_>>>()?;
    Ok(spec.with_eigenvalues(&values))
}

/// Largest eigenvalue of `den^{-1/2} num den^{-1/2}`, i.e. the smallest `λ` with `num ≤ λ·den`.
pub fn weighted_operator_norm<T: Real>(num: &HermitianMatrix<T>, den: &HermitianMatrix<T>) -> Result<T> {
    num.check_same_dim(den)?;
    spectral_decompose(num)?.ensure_positive_definite()?;
    let den_spec = spectral_decompose(den)?;
    den_spec.ensure_positive_definite()?;
    let inv_sqrt = den_spec.lift(|x| x.sqrt().recip());
    let m = inv_sqrt.as_matrix() * num.as_matrix() * inv_sqrt.as_matrix();
    Ok(spectral_decompose(&HermitianMatrix::symmetrized(m))?.max_eigenvalue())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{random_hermitian, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(d: &[f64]) -> HermitianMatrix<f64> {
        HermitianMatrix::from_real_diagonal(d).unwrap()
    }

    #[test]
    fn identity_and_diagonal_spectra() {
        let s = spectral_decompose(&HermitianMatrix::<f64>::identity(2)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
        let s = spectral_decompose(&diag(&[0.7, 0.3])).unwrap();
        assert!((s.eigenvalues[0] - 0.3).abs() < 1e-15 && (s.eigenvalues[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=8 {
            let a = random_hermitian(&mut rng, d);
            let s = spectral_decompose(&a).unwrap();
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            let err = (s.reconstruct().as_matrix() - a.as_matrix()).norm();
            assert!(err <= 1e-10 * a.frobenius_norm().max(1.0), "d={d} err={err}");
            let gram = s.eigenvectors.adjoint() * &s.eigenvectors;
            assert!((gram - DMatrix::identity(d, d)).norm() <= 1e-10);
        }
    }

    #[test]
    fn log_and_sqrt_of_simple_matrices() {
        let l = matrix_function(&HermitianMatrix::<f64>::identity(3), ScalarFunction::Log).unwrap();
        assert!(l.frobenius_norm() < 1e-15);
        let r = matrix_function(&diag(&[4.0, 9.0]), ScalarFunction::Power(0.5)).unwrap();
        assert!(r.max_abs_diff(&diag(&[2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn log_exp_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = random_unitary(&mut rng, 3);
        let a = diag(&[0.2, 1.1, 3.5]).conjugate_by(&u);
        let l = matrix_function(&a, ScalarFunction::Log).unwrap();
        let back = matrix_function(&l, ScalarFunction::Exp).unwrap();
        assert!((back.as_matrix() - a.as_matrix()).norm() < 1e-9);
    }

    #[test]
    fn log_rejects_singular_input() {
        let err = matrix_function(&diag(&[1.0, 0.0]), ScalarFunction::Log);
        assert!(matches!(err, Err(Error::NotPositiveDefinite { .. })));
        let err = matrix_function(&diag(&[1.0, -1e-6]), ScalarFunction::Power(0.5));
        assert!(matches!(err, Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn weighted_norm_examples() {
        let a = diag(&[0.7, 0.3]);
        assert!((weighted_operator_norm(&a, &a).unwrap() - 1.0).abs() < 1e-14);
        let v = weighted_operator_norm(&a, &diag(&[0.4, 0.6])).unwrap();
        assert!((v - 1.75).abs() < 1e-14);
        assert!(weighted_operator_norm(&a, &diag(&[1.0, 0.0])).is_err());
    }
}
