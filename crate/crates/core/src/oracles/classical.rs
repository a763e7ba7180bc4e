use crate::hermitian::{matrix_function, spectral_decompose, weighted_operator_norm, HermitianMatrix, ScalarFunction};
use crate::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-10;

/// Strictly positive probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    entries: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DomainError("empty probability vector".into()));
        }
        if let Some(x) = entries.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::DomainError(format!("probability entry {x} is not strictly positive")));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::DomainError(format!("probabilities sum to {sum}")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_lengths(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::ShapeError {
            expected: format!("length {}", p.len()),
            found: format!("length {}", q.len()),
        });
    }
    Ok(())
}

/// `Σ pᵢ ln(pᵢ/qᵢ)`
pub fn classical_kl(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    check_lengths(p, q)?;
    Ok(p.entries.iter().zip(&q.entries).map(|(&a, &b)| a * (a / b).ln()).sum())
}

/// `Σ pᵢ^α qᵢ^{1−α}`
pub fn classical_renyi_q(p: &ProbabilityVector, q: &ProbabilityVector, alpha: f64) -> Result<f64> {
    check_lengths(p, q)?;
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return Err(Error::DomainError(format!("Renyi order {alpha} outside (0, 1) U (1, inf)")));
    }
    Ok(p.entries.iter().zip(&q.entries).map(|(&a, &b)| a.powf(alpha) * b.powf(1.0 - alpha)).sum())
}

/// `ln(Σ pᵢ^α qᵢ^{1−α}) / (α − 1)`
pub fn classical_renyi(p: &ProbabilityVector, q: &ProbabilityVector, alpha: f64) -> Result<f64> {
    Ok(classical_renyi_q(p, q, alpha)?.ln() / (alpha - 1.0))
}

/// Eigenvalues of ρ paired with the diagonal of σ in ρ's eigenbasis.
///
/// For commuting inputs with non-degenerate ρ these are the two spectra
/// listed in a common eigenbasis.
pub fn eigenbasis_distributions(
    rho: &HermitianMatrix<f64>,
    sigma: &HermitianMatrix<f64>,
) -> Result<(ProbabilityVector, ProbabilityVector)> {
    let s = spectral_decompose(rho)?;
    let m = s.to_eigenbasis(sigma);
    let q = (0..m.nrows()).map(|k| m[(k, k)].re).collect();
    Ok((ProbabilityVector::new(s.eigenvalues.clone())?, ProbabilityVector::new(q)?))
}

/// `Tr[ρ (ln ρ − ln σ)]`
pub fn umegaki_relative_entropy(rho: &HermitianMatrix<f64>, sigma: &HermitianMatrix<f64>) -> Result<f64> {
    let diff = &matrix_function(rho, ScalarFunction::Log)? - &matrix_function(sigma, ScalarFunction::Log)?;
    crate::hermitian::hs_inner(rho, &diff)
}

/// `ln ‖σ^{-1/2} ρ σ^{-1/2}‖`
pub fn max_relative_entropy(rho: &HermitianMatrix<f64>, sigma: &HermitianMatrix<f64>) -> Result<f64> {
    Ok(weighted_operator_norm(rho, sigma)?.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(x: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn kl_examples() {
        let p = pv(&[0.7, 0.3]);
        let q = pv(&[0.4, 0.6]);
        assert_eq!(classical_kl(&p, &p).unwrap(), 0.0);
        assert!((classical_kl(&p, &q).unwrap() - 0.183_786_897_386_812_3).abs() < 1e-15);
        assert!(classical_kl(&pv(&[0.5, 0.5]), &pv(&[0.5, 0.5])).unwrap().abs() < 1e-16);
    }

    #[test]
    fn renyi_examples() {
        let p = pv(&[0.7, 0.3]);
        let q = pv(&[0.4, 0.6]);
        assert!((classical_renyi_q(&p, &p, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!((classical_renyi_q(&p, &q, 2.0).unwrap() - 1.375).abs() < 1e-15);
        assert!(classical_renyi_q(&p, &q, 0.5).unwrap() <= 1.0);
        assert!(classical_renyi_q(&p, &q, 1.0).is_err());
        assert!(classical_renyi_q(&p, &q, 0.0).is_err());
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5, 0.0]).is_err());
        assert!(ProbabilityVector::new(vec![0.6, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert!(classical_kl(&pv(&[1.0]), &pv(&[0.5, 0.5])).is_err());
    }

    #[test]
    fn quantum_bounds_on_diagonal_pair() {
        let rho = HermitianMatrix::from_real_diagonal(&[0.7, 0.3]).unwrap();
        let sigma = HermitianMatrix::from_real_diagonal(&[0.4, 0.6]).unwrap();
        assert!((umegaki_relative_entropy(&rho, &sigma).unwrap() - 0.183_786_897_386_812_3).abs() < 1e-14);
        assert!((max_relative_entropy(&rho, &sigma).unwrap() - 1.75f64.ln()).abs() < 1e-14);
    }

    fn distribution(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.01f64..1.0, len).prop_map(|w| {
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
    }

    proptest! {
        #[test]
        fn kl_nonnegative(p in distribution(5), q in distribution(5)) {
            let (p, q) = (pv(&p), pv(&q));
            prop_assert!(classical_kl(&p, &q).unwrap() >= -1e-15);
            prop_assert!(classical_kl(&p, &p).unwrap().abs() < 1e-15);
        }

        #[test]
        fn renyi_q_brackets_one(p in distribution(4), q in distribution(4), a in 0.05f64..0.95, b in 1.05f64..4.0) {
            let (p, q) = (pv(&p), pv(&q));
            prop_assert!(classical_renyi_q(&p, &q, a).unwrap() <= 1.0 + 1e-14);
            prop_assert!(classical_renyi_q(&p, &q, b).unwrap() >= 1.0 - 1e-14);
            prop_assert!((classical_renyi_q(&p, &p, a).unwrap() - 1.0).abs() < 1e-14);
            prop_assert!((classical_renyi_q(&p, &p, b).unwrap() - 1.0).abs() < 1e-14);
        }
    }
}
