//! Central moments of a Hamiltonian in a pure state and the curvature and
//! torsion coefficients that follow from them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::STATIONARY_SPEED;
use crate::hilbert::{expectation, inner, norm_sq, HermitianOperator, StateVector};

/// μ₂ at or below this multiple of ‖H − tr(H)/d‖²_F marks an eigenstate.
pub const STATIONARY_RELATIVE_VARIANCE: f64 = 1e-10;
/// Rounding allowance below zero for quantities that are squares.
pub const NEGATIVE_TOLERANCE: f64 = 1e-9;

/// Shared eigenstate test: the speed is below [`STATIONARY_SPEED`] or the
/// variance is negligible relative to the spread of the spectrum.
pub fn is_stationary(mu2: f64, scale_sq: f64) -> bool {
    mu2.max(0.0).sqrt() <= STATIONARY_SPEED || mu2 <= STATIONARY_RELATIVE_VARIANCE * scale_sq
}

/// ⟨H⟩ and the second to fourth central moments of H in one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub mu4: f64,
    /// Skewness μ₃/μ₂^{3/2}; `None` for an eigenstate.
    pub alpha3: Option<f64>,
    /// Kurtosis μ₄/μ₂²; `None` for an eigenstate.
    pub alpha4: Option<f64>,
}

impl MomentSet {
    fn standardized(&self) -> Result<(f64, f64)> {
        match (self.alpha3, self.alpha4) {
            (Some(a3), Some(a4)) => Ok((a3, a4)),
            _ => Err(Error::StationaryState { speed: self.mu2.max(0.0).sqrt() }),
        }
    }

    /// Speed v = √μ₂ (ħ = 1).
    pub fn speed(&self) -> f64 {
        self.mu2.max(0.0).sqrt()
    }
}

/// Moments from repeated application of H − ⟨H⟩ to the state:
/// w₁ = (H − E)ψ, w₂ = (H − E)w₁, μ₂ = ‖w₁‖², μ₃ = Re⟨w₁|w₂⟩, μ₄ = ‖w₂‖².
pub fn central_moments(h: &HermitianOperator, state: &StateVector) -> Result<MomentSet> {
    let mean = expectation(h, state)?;
    let shift = Complex64::new(mean, 0.0);
    let psi = state.amplitudes();
    let w1 = h.apply(psi) - psi * shift;
    let w2 = h.apply(&w1) - &w1 * shift;
    let mu2 = norm_sq(&w1);
    let mu3 = inner(&w1, &w2).re;
    let mu4 = norm_sq(&w2);
    let (alpha3, alpha4) = if is_stationary(mu2, h.traceless_frobenius_sq()) {
        (None, None)
    } else {
        (Some(mu3 / mu2.powf(1.5)), Some(mu4 / (mu2 * mu2)))
    };
    Ok(MomentSet { mean, mu2, mu3, mu4, alpha3, alpha4 })
}

/// κ² = α₄ − 1 = ⟨(Δh)⁴⟩ − 1.
pub fn curvature_from_moments(m: &MomentSet) -> Result<f64> {
    let (_, a4) = m.standardized()?;
    Ok(a4 - 1.0)
}

/// τ² = α₄ − 1 − α₃².
pub fn torsion_from_moments(m: &MomentSet) -> Result<f64> {
    let (a3, a4) = m.standardized()?;
    Ok(a4 - 1.0 - a3 * a3)
}

/// α₄ − α₃² − 1, non-negative up to rounding (Pearson's inequality).
pub fn pearson_gap(m: &MomentSet) -> Result<f64> {
    torsion_from_moments(m)
}

/// Clamps values in [−[`NEGATIVE_TOLERANCE`], 0) to zero for reporting.
pub fn clamp_rounding(x: f64) -> f64 {
    if (-NEGATIVE_TOLERANCE..0.0).contains(&x) {
        0.0
    } else {
        x
    }
}
