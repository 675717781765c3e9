//! Geodesic efficiency: Fubini–Study angle between the endpoints divided by
//! the length of the path actually travelled.

use crate::error::{Error, Result};
use crate::evolution::EvolutionProblem;
use crate::hilbert::{inner, orthogonal_residual_sq};

/// η(t) = arccos|⟨ψ(0)|ψ(t)⟩| / (v·t) for a time-independent Hamiltonian.
///
/// The angle is evaluated as atan2(‖ψ(t)⊥‖, |⟨ψ(0)|ψ(t)⟩|), which stays
/// accurate when the endpoints are close.
pub fn geodesic_efficiency(problem: &EvolutionProblem, t: f64) -> Result<f64> {
    let v = problem.require_motion()?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::param("t", format!("must be positive, got {t}")));
    }
    let start = problem.initial_state().amplitudes();
    let end = problem.evolve(t)?;
    let along = inner(start, end.amplitudes()).norm();
    let across = orthogonal_residual_sq(start, end.amplitudes()).sqrt();
    Ok(across.atan2(along) / (v * t))
}
