//! Random Hamiltonians and states for property checks and validation runs.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::hilbert::{CMatrix, CVector, HermitianOperator, StateVector};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// (A + A†)/2 with A having i.i.d. standard complex Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianOperator {
    let a = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let h = (&a + a.adjoint()).unscale(2.0);
    HermitianOperator::new(h).expect("symmetrized Gaussian matrix is Hermitian")
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| gaussian(rng));
        if let Ok(state) = StateVector::normalized(v) {
            return state;
        }
    }
}

/// Uniform point on the unit sphere in ℝ³.
pub fn random_unit3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}
