use nalgebra::{Complex, DMatrix};

use crate::hermitian::{spectral_decompose, HermitianMatrix};
use crate::{Error, Result};

fn direction(dim: usize, i: usize, j: usize, imaginary: bool) -> HermitianMatrix<f64> {
    let mut e = DMatrix::<Complex<f64>>::zeros(dim, dim);
    if i == j {
        e[(i, i)] = Complex::new(1.0, 0.0);
    } else if imaginary {
        e[(i, j)] = Complex::new(0.0, 1.0);
        e[(j, i)] = Complex::new(0.0, -1.0);
    } else {
        e[(i, j)] = Complex::new(1.0, 0.0);
        e[(j, i)] = Complex::new(1.0, 0.0);
    }
    HermitianMatrix::new(e).expect("elementary Hermitian direction")
}

/// Central-difference matrix gradient `G` with `df = Tr[G dω]`.
///
/// Diagonal entries come from `E_ii`. Off-diagonal entries use the pair
/// `E_ij + E_ji` and `i E_ij − i E_ji`, whose directional derivatives are
/// `2 Re G_ij` and `2 Im G_ij`.
pub fn finite_diff_gradient<F>(objective: F, omega: &HermitianMatrix<f64>, step: f64) -> Result<HermitianMatrix<f64>>
where
    F: Fn(&HermitianMatrix<f64>) -> Result<f64>,
{
    let min_eig = spectral_decompose(omega)?.min_eigenvalue();
    if step.is_nan() || step <= 0.0 || min_eig <= 10.0 * step {
        return Err(Error::StepTooLarge { step, min_eigenvalue: min_eig });
    }
    let d = omega.dim();
    let deriv = |e: &HermitianMatrix<f64>| -> Result<f64> {
        let plus = objective(&omega.axpy(step, e))?;
        let minus = objective(&omega.axpy(-step, e))?;
        Ok((plus - minus) / (2.0 * step))
    };
    let mut g = DMatrix::<Complex<f64>>::zeros(d, d);
    for i in 0..d {
        g[(i, i)] = Complex::new(deriv(&direction(d, i, i, false))?, 0.0);
        for j in i + 1..d {
            let re = deriv(&direction(d, i, j, false))? / 2.0;
            let im = deriv(&direction(d, i, j, true))? / 2.0;
            g[(i, j)] = Complex::new(re, im);
            g[(j, i)] = Complex::new(re, -im);
        }
    }
    HermitianMatrix::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::hs_inner;
    use crate::oracles::{random_hermitian, random_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn feasible_omega(rng: &mut ChaCha8Rng, d: usize) -> HermitianMatrix<f64> {
        random_state(rng, d).axpy(1.0, &HermitianMatrix::scaled_identity(d, 0.5))
    }

    #[test]
    fn linear_objective_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_hermitian(&mut rng, 4);
        let omega = feasible_omega(&mut rng, 4);
        let g = finite_diff_gradient(|w| hs_inner(&a, w), &omega, 1e-5).unwrap();
        assert!(g.max_abs_diff(&a) < 1e-9);
    }

    #[test]
    fn quadratic_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_hermitian(&mut rng, 3);
        let omega = feasible_omega(&mut rng, 3);
        let f = |w: &HermitianMatrix<f64>| {
            let w2 = HermitianMatrix::new(w.as_matrix() * w.as_matrix()).unwrap();
            hs_inner(&a, &w2)
        };
        let want = HermitianMatrix::new(omega.as_matrix() * a.as_matrix() + a.as_matrix() * omega.as_matrix()).unwrap();
        let g = finite_diff_gradient(f, &omega, 1e-4).unwrap();
        assert!(g.max_abs_diff(&want) < 1e-6);
    }

    #[test]
    fn error_shrinks_quadratically() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_state(&mut rng, 3);
        let omega = feasible_omega(&mut rng, 3);
        let f = |w: &HermitianMatrix<f64>| {
            let l = crate::hermitian::matrix_function(w, crate::hermitian::ScalarFunction::Log)?;
            hs_inner(&l, &rho)
        };
        let exact = crate::objectives::gradient_h(&rho, &HermitianMatrix::zeros(3), &omega).unwrap();
        let e1 = finite_diff_gradient(f, &omega, 1e-3).unwrap().max_abs_diff(&exact);
        let e2 = finite_diff_gradient(f, &omega, 1e-4).unwrap().max_abs_diff(&exact);
        let ratio = e1 / e2;
        assert!((20.0..500.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn step_must_fit_inside_the_cone() {
        let omega = HermitianMatrix::from_real_diagonal(&[1e-4, 1.0]).unwrap();
        assert!(matches!(finite_diff_gradient(|_| Ok(0.0), &omega, 1e-5), Err(Error::StepTooLarge { .. })));
    }
}
