//! Single-qubit states as Bloch vectors and Hamiltonians m₀·I + m·σ.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{CVector, HermitianOperator, StateVector};
use crate::models::families::single_qubit;

/// Relative threshold on m² − (a·m)² below which a is parallel to m.
pub const EIGENSTATE_RELATIVE: f64 = 1e-12;

/// Unit vector a with ρ = (I + a·σ)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    a: [f64; 3],
}

impl BlochVector {
    pub fn new(a: [f64; 3]) -> Result<Self> {
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("Bloch vector"));
        }
        let n2 = dot(a, a);
        if (n2.sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::param("a", format!("Bloch vector of a pure state must have unit length, got {}", n2.sqrt())));
        }
        Ok(Self { a })
    }

    /// (sinθ cosφ, sinθ sinφ, cosθ).
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        Self::new([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()])
    }

    pub fn components(&self) -> [f64; 3] {
        self.a
    }
}

/// m₀·I + m·σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticVector {
    pub m: [f64; 3],
    pub m0: f64,
}

impl MagneticVector {
    pub fn new(m: [f64; 3]) -> Self {
        Self { m, m0: 0.0 }
    }

    pub fn with_shift(m: [f64; 3], m0: f64) -> Self {
        Self { m, m0 }
    }

    pub fn hamiltonian(&self) -> HermitianOperator {
        single_qubit(self.m, self.m0)
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ for a = (sinθ cosφ, sinθ sinφ, cosθ).
pub fn bloch_to_state(a: &BlochVector) -> StateVector {
    let [x, y, z] = a.a;
    let c = ((1.0 + z) / 2.0).max(0.0).sqrt();
    let s = ((1.0 - z) / 2.0).max(0.0).sqrt();
    let rho = x.hypot(y);
    let phase = if rho > 0.0 { Complex64::new(x / rho, y / rho) } else { Complex64::new(1.0, 0.0) };
    StateVector::normalized(CVector::from_vec(vec![Complex64::new(c, 0.0), phase * s]))
        .expect("unit Bloch vector gives a nonzero amplitude pair")
}

/// (⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩).
pub fn state_to_bloch(psi: &StateVector) -> Result<BlochVector> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: psi.dim() });
    }
    let a0 = psi.amplitudes()[0];
    let a1 = psi.amplitudes()[1];
    let off = a0.conj() * a1;
    let a = [2.0 * off.re, 2.0 * off.im, a0.norm_sqr() - a1.norm_sqr()];
    let n = dot(a, a).sqrt();
    Ok(BlochVector { a: [a[0] / n, a[1] / n, a[2] / n] })
}

fn transverse(a: &BlochVector, m: &MagneticVector) -> Result<(f64, f64)> {
    let am = dot(a.a, m.m);
    let m2 = dot(m.m, m.m);
    // Computed as |a × m|² to avoid cancellation in m² − (a·m)².
    let c = [
        a.a[1] * m.m[2] - a.a[2] * m.m[1],
        a.a[2] * m.m[0] - a.a[0] * m.m[2],
        a.a[0] * m.m[1] - a.a[1] * m.m[0],
    ];
    let perp = dot(c, c);
    if m2 == 0.0 || perp <= EIGENSTATE_RELATIVE * m2 {
        return Err(Error::StationaryState { speed: 2.0 * perp.sqrt() });
    }
    Ok((am, perp))
}

/// κ² = 4(a·m)²/(m² − (a·m)²).
pub fn curvature_bloch(a: &BlochVector, m: &MagneticVector) -> Result<f64> {
    let (am, perp) = transverse(a, m)?;
    Ok(4.0 * am * am / perp)
}

/// τ² = 0 for every non-stationary qubit trajectory.
pub fn torsion_bloch(a: &BlochVector, m: &MagneticVector) -> Result<f64> {
    transverse(a, m)?;
    Ok(0.0)
}

/// ⟨(ΔH)³⟩ = −2(a·m)(m² − (a·m)²).
pub fn third_moment_bloch(a: &BlochVector, m: &MagneticVector) -> f64 {
    let am = dot(a.a, m.m);
    -2.0 * am * (dot(m.m, m.m) - am * am)
}
