#![allow(dead_code)]

use qcurve_core::sampling::{random_hermitian, random_state};
use qcurve_core::{CVector, Complex64, EvolutionProblem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_problem(rng: &mut ChaCha8Rng, d: usize) -> EvolutionProblem {
    EvolutionProblem::new(random_hermitian(rng, d), random_state(rng, d)).unwrap()
}

pub fn max_diff(a: &CVector, b: &CVector) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Max entrywise distance after removing the relative global phase.
pub fn phase_free_diff(a: &CVector, b: &CVector) -> f64 {
    let ov = a.dotc(b);
    let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { Complex64::new(1.0, 0.0) };
    max_diff(&(a * phase), b)
}

pub fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    (a - b).abs() <= abs.max(rel * a.abs().max(b.abs()))
}
