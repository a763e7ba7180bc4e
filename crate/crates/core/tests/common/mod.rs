#![allow(dead_code)]

use meo_core::oracles::{random_instance, random_unitary, InstanceSpec};
use meo_core::{smoothness_for, Hermitian64, Instance64, Kind64, Profile64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn kinds() -> Vec<Kind64> {
    vec![
        Kind64::MeasuredRelEnt,
        Kind64::renyi(0.3).unwrap(),
        Kind64::renyi(0.5).unwrap(),
        Kind64::renyi(0.75).unwrap(),
        Kind64::renyi(2.0).unwrap(),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Instance plus a random point whose spectrum lies in the operator interval.
pub fn feasible_case(kind: Kind64, dim: usize, seed: u64) -> (Instance64, Profile64, Hermitian64) {
    let inst = random_instance(&InstanceSpec::new(dim, seed).mixing(0.5)).unwrap().with_kind(kind).unwrap();
    let profile = smoothness_for(&inst).unwrap();
    let mut r = rng(seed ^ 0x5eed);
    let (lo, hi) = (profile.interval.lo(), profile.interval.hi());
    let eig: Vec<f64> = (0..dim).map(|_| lo + (hi - lo) * r.random::<f64>()).collect();
    let u = random_unitary(&mut r, dim);
    let omega = Hermitian64::from_real_diagonal(&eig).unwrap().conjugate_by(&u);
    (inst, profile, omega)
}

pub fn random_direction(seed: u64, dim: usize) -> Hermitian64 {
    let x = meo_core::oracles::random_hermitian(&mut rng(seed), dim);
    let n = x.frobenius_norm();
    x.scale(1.0 / n)
}

pub fn rel_diff(a: &Hermitian64, b: &Hermitian64) -> f64 {
    (a - b).frobenius_norm() / b.frobenius_norm().max(f64::MIN_POSITIVE)
}
