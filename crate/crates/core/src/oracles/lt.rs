//! Finite-time estimates of curvature and torsion from Fubini–Study
//! distances between three or four points of the trajectory.
//!
//! Curvature: the minimal squared distance from ψ(Δt) to the geodesic
//! joining ψ(0) and ψ(2Δt) scales as κ_LT·(γ²/4)·Δt⁴. Torsion: the weight of
//! ψ(2Δt) outside the plane spanned by ψ(0) and ψ(Δt) scales as τ_LT·Δt⁴.
//! Both leading coefficients are extracted by a least-squares fit through
//! the origin over a grid of Δt.

use log::warn;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::EvolutionProblem;
use crate::hilbert::{inner, norm_sq, orthogonal_residual_sq, CVector, StateVector};
use crate::oracles::optimize::{fit_through_origin, golden_section_min};

/// Default Fubini–Study scale factor.
pub const DEFAULT_GAMMA: f64 = 2.0;
/// Overlap magnitude at or below which geodesic endpoints count as orthogonal.
pub const ORTHOGONAL_OVERLAP: f64 = 1e-10;
/// Largest accepted relative residual of the Δt⁴ fit.
pub const MAX_FIT_RESIDUAL: f64 = 0.05;
/// Normalized coefficients below this are fit noise; no residual check.
pub const NOISE_FLOOR: f64 = 1e-8;
/// ξ tolerance of the golden-section search.
pub const XI_TOLERANCE: f64 = 1e-10;
/// Coarse scan points seeding the golden-section search.
pub const XI_SCAN_POINTS: usize = 64;
/// v·Δt above which the small-step expansion is considered unreliable.
pub const LARGE_STEP: f64 = 0.1;

/// Outcome of a Δt⁴ fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Leading coefficient in time units (κ_LT or τ_LT).
    pub coefficient: f64,
    /// Coefficient divided by μ₂², comparable with κ² or τ².
    pub normalized: f64,
    /// Relative residual ‖y − C·Δt⁴‖/‖y‖.
    pub residual: f64,
    pub dt_grid: Vec<f64>,
    /// Measured quantity at each Δt (d²_min or 1 − p_Π).
    pub samples: Vec<f64>,
}

/// γ²(1 − |⟨ψ₁|ψ₂⟩|²), evaluated from the component of ψ₂ orthogonal to ψ₁.
pub fn fubini_study_sq(psi1: &StateVector, psi2: &StateVector, gamma: f64) -> Result<f64> {
    if psi1.dim() != psi2.dim() {
        return Err(Error::DimensionMismatch { expected: psi1.dim(), found: psi2.dim() });
    }
    check_gamma(gamma)?;
    let sq = gamma * gamma;
    Ok((sq * orthogonal_residual_sq(psi1.amplitudes(), psi2.amplitudes())).clamp(0.0, sq))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::param("gamma", format!("must be positive and finite, got {gamma}")))
    }
}

/// Point at fraction ξ along the geodesic from ψ_i to ψ_f: the normalized
/// blend (1−ξ)ψ_i + ξ·e^{iφ}ψ_f with e^{iφ} = ⟨ψ_f|ψ_i⟩/|⟨ψ_f|ψ_i⟩|.
pub fn geodesic_interpolate(psi_i: &StateVector, psi_f: &StateVector, xi: f64) -> Result<StateVector> {
    if psi_i.dim() != psi_f.dim() {
        return Err(Error::DimensionMismatch { expected: psi_i.dim(), found: psi_f.dim() });
    }
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::param("xi", format!("{xi} not in [0, 1]")));
    }
    let overlap = psi_f.inner(psi_i);
    let mag = overlap.norm();
    if mag <= ORTHOGONAL_OVERLAP {
        return Err(Error::OrthogonalEndpoints(mag));
    }
    if xi == 0.0 {
        return Ok(psi_i.clone());
    }
    let blend = psi_i.amplitudes() * Complex64::new(1.0 - xi, 0.0) + psi_f.amplitudes() * (overlap / mag * xi);
    StateVector::normalized(blend)
}

/// Suggested Δt grid {1, 2, 4}·10⁻³/v.
pub fn default_dt_grid(speed: f64) -> Vec<f64> {
    [1e-3, 2e-3, 4e-3].iter().map(|k| k / speed).collect()
}

fn check_grid(problem: &EvolutionProblem, dt_grid: &[f64]) -> Result<f64> {
    let v = problem.require_motion()?;
    if dt_grid.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, found: 0 });
    }
    if dt_grid.iter().any(|dt| !(dt.is_finite() && *dt > 0.0)) {
        return Err(Error::param("dt_grid", "entries must be positive and finite"));
    }
    if dt_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("dt_grid", "entries must be strictly increasing"));
    }
    let largest = dt_grid[dt_grid.len() - 1] * v;
    if largest > LARGE_STEP {
        warn!("v·Δt = {largest:.3} exceeds {LARGE_STEP}; the Δt⁴ law may not hold");
    }
    Ok(v)
}

fn finish(dt_grid: &[f64], samples: Vec<f64>, coefficient_scale: f64, mu2: f64) -> Result<FitResult> {
    let x: Vec<f64> = dt_grid.iter().map(|dt| dt.powi(4)).collect();
    let (slope, residual) = fit_through_origin(&x, &samples);
    let coefficient = slope * coefficient_scale;
    let normalized = coefficient / (mu2 * mu2);
    if normalized.abs() > NOISE_FLOOR && residual > MAX_FIT_RESIDUAL {
        return Err(Error::PoorFit { residual, limit: MAX_FIT_RESIDUAL });
    }
    Ok(FitResult { coefficient, normalized, residual, dt_grid: dt_grid.to_vec(), samples })
}

/// Minimal squared distance from ψ(Δt) to the geodesic ψ(0) → ψ(2Δt).
pub fn minimal_geodesic_deviation(problem: &EvolutionProblem, dt: f64, gamma: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    let start = problem.initial_state();
    let middle = problem.evolve(dt)?;
    let end = problem.evolve(2.0 * dt)?;
    // Validate the endpoints once so the objective below cannot fail.
    geodesic_interpolate(start, &end, 0.5)?;
    let objective = |xi: f64| {
        let g = geodesic_interpolate(start, &end, xi).expect("endpoints checked above");
        fubini_study_sq(&middle, &g, gamma).expect("dimensions checked above")
    };
    Ok(golden_section_min(objective, 0.0, 1.0, XI_SCAN_POINTS, XI_TOLERANCE))
}

/// κ_LT from d²_min = κ_LT·(γ²/4)·Δt⁴ (ħ = 1); `normalized` → κ².
pub fn lt_curvature(problem: &EvolutionProblem, dt_grid: &[f64], gamma: f64) -> Result<FitResult> {
    check_gamma(gamma)?;
    let v = check_grid(problem, dt_grid)?;
    let samples = dt_grid
        .iter()
        .map(|&dt| minimal_geodesic_deviation(problem, dt, gamma).map(|(_, d2)| d2))
        .collect::<Result<Vec<_>>>()?;
    finish(dt_grid, samples, 4.0 / (gamma * gamma), v * v)
}

/// 1 − ⟨ψ(2Δt)|P_Π|ψ(2Δt)⟩ with Π the plane spanned by ψ(0) and ψ(Δt).
pub fn plane_escape(problem: &EvolutionProblem, dt: f64) -> Result<f64> {
    let phi1 = problem.initial_state().amplitudes().clone();
    let next = problem.evolve(dt)?;
    let basis = crate::hilbert::gram_schmidt(&[phi1, next.into_inner()])?;
    let target = problem.evolve(2.0 * dt)?;
    let mut r: CVector = target.into_inner();
    for _ in 0..2 {
        for u in &basis {
            let c = inner(u, &r);
            r -= u * c;
        }
    }
    Ok(norm_sq(&r))
}

/// τ_LT from 1 − p_Π = τ_LT·Δt⁴ (ħ = 1); `normalized` → τ².
pub fn lt_torsion(problem: &EvolutionProblem, dt_grid: &[f64]) -> Result<FitResult> {
    let v = check_grid(problem, dt_grid)?;
    let samples = dt_grid.iter().map(|&dt| plane_escape(problem, dt)).collect::<Result<Vec<_>>>()?;
    finish(dt_grid, samples, 1.0, v * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{build_operator, PauliTerm};
    use approx::assert_abs_diff_eq;

    fn s2() -> f64 {
        1.0 / 2f64.sqrt()
    }

    fn problem(terms: &[(f64, &str)], state: StateVector) -> EvolutionProblem {
        let n = terms[0].1.len();
        let terms: Vec<PauliTerm> = terms.iter().map(|(c, w)| PauliTerm::new(*c, *w)).collect();
        EvolutionProblem::new(build_operator(&terms, n).unwrap(), state).unwrap()
    }

    #[test]
    fn distance_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        let one = StateVector::basis(2, 1).unwrap();
        let plus = StateVector::from_real(&[s2(), s2()]).unwrap();
        assert_eq!(fubini_study_sq(&zero, &zero, 2.0).unwrap(), 0.0);
        assert_eq!(fubini_study_sq(&zero, &one, 2.0).unwrap(), 4.0);
        assert_abs_diff_eq!(fubini_study_sq(&zero, &plus, 2.0).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fubini_study_sq(&plus, &zero, 2.0).unwrap(), 2.0, epsilon = 1e-15);
        assert!(fubini_study_sq(&zero, &plus, 0.0).is_err());
    }

    #[test]
    fn geodesic_endpoints_and_midpoint() {
        let zero = StateVector::basis(2, 0).unwrap();
        let plus = StateVector::from_real(&[s2(), s2()]).unwrap().with_global_phase(0.9);
        assert_eq!(geodesic_interpolate(&zero, &plus, 0.0).unwrap(), zero);
        let end = geodesic_interpolate(&zero, &plus, 1.0).unwrap();
        assert_abs_diff_eq!(end.fidelity(&plus), 1.0, epsilon = 1e-15);
        let mid = geodesic_interpolate(&zero, &plus, 0.5).unwrap();
        let a = fubini_study_sq(&mid, &zero, 2.0).unwrap();
        let b = fubini_study_sq(&mid, &plus, 2.0).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        let one = StateVector::basis(2, 1).unwrap();
        assert!(matches!(geodesic_interpolate(&zero, &one, 0.5), Err(Error::OrthogonalEndpoints(_))));
    }

    #[test]
    fn geodesic_motion_has_no_deviation() {
        let p = problem(&[(1.0, "Z")], StateVector::from_real(&[s2(), s2()]).unwrap());
        let (_, d2) = minimal_geodesic_deviation(&p, 1e-3, 2.0).unwrap();
        assert!(d2.abs() <= 1e-12);
        let fit = lt_curvature(&p, &default_dt_grid(p.speed()), 2.0).unwrap();
        assert!(fit.normalized.abs() < 1e-6);
    }

    #[test]
    fn tilted_qubit_curvature_and_flat_torsion() {
        let theta = std::f64::consts::FRAC_PI_4;
        let psi = StateVector::from_real(&[(theta / 2.0).cos(), (theta / 2.0).sin()]).unwrap();
        let p = problem(&[(1.0, "Z")], psi);
        let grid = default_dt_grid(p.speed());
        let k = lt_curvature(&p, &grid, 2.0).unwrap();
        assert!((k.normalized - 4.0).abs() < 0.01 * 4.0, "{k:?}");
        assert!(k.residual < 0.01);
        let t = lt_torsion(&p, &grid).unwrap();
        assert!(t.coefficient.abs() <= 1e-10, "{t:?}");
    }

    #[test]
    fn xzzx_problem() {
        let p = problem(&[(1.0, "XZ"), (1.0, "ZX")], StateVector::from_bits("00").unwrap());
        let grid = default_dt_grid(p.speed());
        let k = lt_curvature(&p, &grid, 2.0).unwrap();
        assert!((k.normalized - 1.0).abs() < 0.01, "{k:?}");
        let t = lt_torsion(&p, &grid).unwrap();
        assert!((t.normalized - 1.0).abs() < 0.01, "{t:?}");
    }

    #[test]
    fn nonlocal_two_qubit_torsion() {
        let p = problem(
            &[(2.0, "XX"), (1.0, "ZZ"), (1.0, "XZ"), (1.0, "ZX")],
            StateVector::from_bits("00").unwrap(),
        );
        let t = lt_torsion(&p, &default_dt_grid(p.speed())).unwrap();
        assert!((t.normalized - 1.0 / 27.0).abs() < 0.02 / 27.0, "{t:?}");
        let k = lt_curvature(&p, &default_dt_grid(p.speed()), 2.0).unwrap();
        assert!((k.normalized - 1.0 / 3.0).abs() < 0.02 / 3.0, "{k:?}");
    }

    #[test]
    fn gamma_does_not_change_normalized_curvature() {
        let p = problem(&[(1.0, "XZ"), (1.0, "ZX")], StateVector::from_bits("00").unwrap());
        let grid = default_dt_grid(p.speed());
        let a = lt_curvature(&p, &grid, 2.0).unwrap();
        let b = lt_curvature(&p, &grid, 0.5).unwrap();
        assert_abs_diff_eq!(a.normalized, b.normalized, epsilon = 1e-6);
    }

    #[test]
    fn grid_validation() {
        let p = problem(&[(1.0, "XZ"), (1.0, "ZX")], StateVector::from_bits("00").unwrap());
        assert!(lt_torsion(&p, &[]).is_err());
        assert!(lt_torsion(&p, &[2e-3, 1e-3]).is_err());
        assert!(lt_torsion(&p, &[-1e-3]).is_err());
        let still = problem(&[(1.0, "Z")], StateVector::basis(2, 0).unwrap());
        assert!(matches!(lt_curvature(&still, &[1e-3], 2.0), Err(Error::StationaryState { .. })));
    }
}
