//! Seeded random instances.
//!
//! All sampling goes through `ChaCha8Rng::seed_from_u64(seed)`, which is
//! portable across platforms, so an [`InstanceSpec`] fixes its instance
//! bit for bit.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hermitian::{spectral_decompose, HermitianMatrix};
use crate::objectives::{ProblemInstance, ProblemKind};
use crate::{Error, Result};

/// Recorded in benchmark output so results can be regenerated.
pub const PRNG_NAME: &str = "rand_chacha::ChaCha8Rng seed_from_u64";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Conditioning {
    /// Mix each sample toward `I/d`: `(1−t) I/d + t·sample`, `t ∈ (0, 1]`.
    WellConditioned(f64),
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub dim: usize,
    pub seed: u64,
    pub conditioning: Conditioning,
    /// Diagonalize ρ and σ in one common random basis.
    pub commuting: bool,
}

impl InstanceSpec {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self { dim, seed, conditioning: Conditioning::Raw, commuting: false }
    }

    pub fn mixing(mut self, t: f64) -> Self {
        self.conditioning = Conditioning::WellConditioned(t);
        self
    }

    pub fn commuting(mut self, commuting: bool) -> Self {
        self.commuting = commuting;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInstance("dimension must be at least 1".into()));
        }
        if let Conditioning::WellConditioned(t) = self.conditioning {
            if !(t > 0.0 && t <= 1.0) {
                return Err(Error::InvalidInstance(format!("mixing weight {t} outside (0, 1]")));
            }
        }
        Ok(())
    }
}

fn ginibre<R: Rng>(rng: &mut R, d: usize) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im)
    })
}

/// `(G + G^H)/2` for a complex Ginibre matrix `G`.
pub fn random_hermitian<R: Rng>(rng: &mut R, d: usize) -> HermitianMatrix<f64> {
    let g = ginibre(rng, d);
    let h = (&g + g.adjoint()) * Complex::new(0.5, 0.0);
    HermitianMatrix::new(h).expect("symmetrized Ginibre matrix is Hermitian")
}

/// `G G^H / Tr[G G^H]`.
pub fn random_state<R: Rng>(rng: &mut R, d: usize) -> HermitianMatrix<f64> {
    let g = ginibre(rng, d);
    let w = HermitianMatrix::new(&g * g.adjoint()).expect("G G^H is Hermitian");
    let tr = w.trace();
    w.scale(1.0 / tr)
}

/// Q factor of a Ginibre matrix with the phases of `diag(R)` removed.
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> DMatrix<Complex<f64>> {
    let qr = ginibre(rng, d).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let z = r[(j, j)];
        let phase = if z.norm() > 0.0 { z / Complex::new(z.norm(), 0.0) } else { Complex::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn mix(state: HermitianMatrix<f64>, conditioning: Conditioning) -> HermitianMatrix<f64> {
    match conditioning {
        Conditioning::Raw => state,
        Conditioning::WellConditioned(t) => {
            let d = state.dim();
            HermitianMatrix::scaled_identity(d, (1.0 - t) / d as f64).axpy(t, &state)
        }
    }
}

/// Relative entropy instance drawn from `spec`; use
/// [`ProblemInstance::with_kind`] for the Rényi objectives.
pub fn random_instance(spec: &InstanceSpec) -> Result<ProblemInstance<f64>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.dim;
    let mut rho = mix(random_state(&mut rng, d), spec.conditioning);
    let mut sigma = mix(random_state(&mut rng, d), spec.conditioning);
    if spec.commuting {
        let u = random_unitary(&mut rng, d);
        let diag = |m: &HermitianMatrix<f64>| -> Result<HermitianMatrix<f64>> {
            HermitianMatrix::from_real_diagonal(&spectral_decompose(m)?.eigenvalues)
        };
        rho = diag(&rho)?.conjugate_by(&u);
        sigma = diag(&sigma)?.conjugate_by(&u);
    }
    // Rescale away roundoff in the trace.
    let rho = rho.scale(1.0 / rho.trace());
    let sigma = sigma.scale(1.0 / sigma.trace());
    ProblemInstance::new(rho, sigma, ProblemKind::MeasuredRelEnt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::smoothness_for;

    #[test]
    fn same_seed_same_instance() {
        for commuting in [false, true] {
            let spec = InstanceSpec::new(2, 11).commuting(commuting);
            let a = random_instance(&spec).unwrap();
            let b = random_instance(&spec).unwrap();
            assert_eq!(a.rho().as_matrix(), b.rho().as_matrix());
            assert_eq!(a.sigma().as_matrix(), b.sigma().as_matrix());
        }
        let c = random_instance(&InstanceSpec::new(2, 12)).unwrap();
        assert_ne!(c.rho().as_matrix(), random_instance(&InstanceSpec::new(2, 11)).unwrap().rho().as_matrix());
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(&mut rng, 5);
        let e = &u.adjoint() * &u - DMatrix::<Complex<f64>>::identity(5, 5);
        assert!(e.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn commuting_pairs_commute() {
        for seed in 0..5 {
            let inst = random_instance(&InstanceSpec::new(4, seed).commuting(true)).unwrap();
            let (r, s) = (inst.rho().as_matrix(), inst.sigma().as_matrix());
            let c = r * s - s * r;
            assert!(c.iter().all(|z| z.norm() < 1e-13));
        }
    }

    #[test]
    fn mixing_lowers_kappa() {
        let better = (0..20u64)
            .filter(|&seed| {
                let raw = random_instance(&InstanceSpec::new(4, seed)).unwrap();
                let mixed = random_instance(&InstanceSpec::new(4, seed).mixing(0.1)).unwrap();
                smoothness_for(&mixed).unwrap().kappa <= smoothness_for(&raw).unwrap().kappa
            })
            .count();
        assert!(better >= 18, "{better}/20");
    }

    #[test]
    fn outputs_are_valid_instances() {
        for d in 1..=6 {
            for commuting in [false, true] {
                let spec = InstanceSpec::new(d, 100 + d as u64).mixing(0.5).commuting(commuting);
                let inst = random_instance(&spec).unwrap();
                assert!((inst.rho().trace() - 1.0).abs() < 1e-12);
            }
        }
        assert!(random_instance(&InstanceSpec::new(0, 1)).is_err());
        assert!(random_instance(&InstanceSpec::new(2, 1).mixing(0.0)).is_err());
        assert!(random_instance(&InstanceSpec::new(2, 1).mixing(1.5)).is_err());
    }
}
