//! Geometry report for a single problem: moments and geometric routes side
//! by side, optionally with the finite-difference oracle.

use std::f64::consts::FRAC_PI_2;

use qcurve_core::moments::clamp_rounding;
use qcurve_core::oracles::lt::default_dt_grid;
use qcurve_core::{
    build_frame, central_moments, curvature_from_moments, curvature_geometric, lt_curvature, lt_torsion,
    pearson_gap, torsion_from_moments, torsion_geometric, EvolutionProblem,
};
use serde::Serialize;

use crate::error::{degenerate, Result};
use crate::spec::{Instance, Options};

/// Allowed disagreement between the two routes, relative to max(1, κ²).
pub const ROUTE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub kappa_lt_normalized: f64,
    pub tau_lt_normalized: f64,
    /// Relative residuals of the curvature and torsion fits.
    pub fit_residuals: [f64; 2],
    pub dt_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub dimension: usize,
    pub energy: f64,
    pub speed: f64,
    pub kappa_sq_moments: f64,
    pub kappa_sq_geometric: f64,
    pub tau_sq_moments: f64,
    pub tau_sq_geometric: f64,
    pub alpha3: f64,
    pub alpha4: f64,
    pub pearson_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub frame_present: bool,
    pub warnings: Vec<String>,
}

fn mismatch(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() > ROUTE_TOLERANCE * scale.abs().max(1.0)
}

/// Builds the report. Stationary states are reported as degenerate.
pub fn build_report(instance: &Instance, options: &Options, with_oracle: bool) -> Result<GeometryReport> {
    let problem = EvolutionProblem::new(instance.hamiltonian.clone(), instance.state.clone())?;
    let moments = central_moments(problem.hamiltonian(), problem.initial_state())?;
    let kappa_m = curvature_from_moments(&moments).map_err(degenerate)?;
    let tau_m = clamp_rounding(torsion_from_moments(&moments).map_err(degenerate)?);
    let gap = clamp_rounding(pearson_gap(&moments).map_err(degenerate)?);
    let mut warnings = vec![];

    let frame = build_frame(&problem, 0.0, None).map_err(degenerate)?;
    let kappa_g = frame.kappa_sq;
    let tau_g = frame.tau_sq;
    if mismatch(kappa_m, kappa_g, kappa_m) {
        warnings.push(format!("curvature routes disagree: moments {kappa_m}, geometric {kappa_g}"));
    }
    if mismatch(tau_m, tau_g, kappa_m) {
        warnings.push(format!("torsion routes disagree: moments {tau_m}, geometric {tau_g}"));
    }

    // Arc lengths spread over [0, π/2), the diameter of projective space.
    let step = FRAC_PI_2 / options.s_samples as f64;
    let mut drift = 0.0f64;
    for k in 1..options.s_samples {
        let s = step * k as f64;
        drift = drift.max((curvature_geometric(&problem, s)? - kappa_g).abs());
        drift = drift.max((torsion_geometric(&problem, s)? - tau_g).abs());
    }
    if drift > ROUTE_TOLERANCE * kappa_g.max(1.0) {
        warnings.push(format!("invariants vary along the curve by {drift:e}"));
    }

    let oracle = if with_oracle {
        let grid = options.dt_grid.clone().unwrap_or_else(|| default_dt_grid(problem.speed()));
        match (lt_curvature(&problem, &grid, options.gamma), lt_torsion(&problem, &grid)) {
            (Ok(k), Ok(t)) => Some(OracleReport {
                kappa_lt_normalized: k.normalized,
                tau_lt_normalized: t.normalized,
                fit_residuals: [k.residual, t.residual],
                dt_grid: grid,
            }),
            (Err(e), _) | (_, Err(e)) => {
                warnings.push(format!("finite-difference oracle failed: {e}"));
                None
            }
        }
    } else {
        None
    };

    Ok(GeometryReport {
        dimension: problem.dim(),
        energy: problem.energy(),
        speed: problem.speed(),
        kappa_sq_moments: kappa_m,
        kappa_sq_geometric: kappa_g,
        tau_sq_moments: tau_m,
        tau_sq_geometric: tau_g,
        alpha3: moments.alpha3.expect("non-stationary"),
        alpha4: moments.alpha4.expect("non-stationary"),
        pearson_gap: gap,
        oracle,
        frame_present: frame.binormal.is_some(),
        warnings,
    })
}

/// Pretty JSON; floats use the shortest representation that round-trips.
pub fn render(report: &GeometryReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report fields are finite");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::CliError;
    use crate::spec::Problem;

    fn report(json: &str, oracle: bool) -> Result<GeometryReport> {
        let p = Problem::from_json(json).unwrap();
        build_report(&p.instance().unwrap(), &p.options, oracle)
    }

    #[test]
    fn xzzx_problem() {
        let r = report(
            r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "XZ"}, {"coeff": 1, "word": "ZX"}]},
                "state": {"named": "00"}}"#,
            true,
        )
        .unwrap();
        assert!((r.kappa_sq_moments - 1.0).abs() < 1e-12 && (r.kappa_sq_geometric - 1.0).abs() < 1e-12);
        assert!((r.tau_sq_moments - 1.0).abs() < 1e-12 && (r.tau_sq_geometric - 1.0).abs() < 1e-12);
        assert!(r.frame_present);
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        let o = r.oracle.unwrap();
        assert!((o.kappa_lt_normalized - 1.0).abs() < 0.02);
        assert!((o.tau_lt_normalized - 1.0).abs() < 0.02);
    }

    #[test]
    fn equator_is_a_geodesic() {
        let r = report(r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "bloch:pi/2,0"}}"#, false)
            .unwrap();
        assert!(r.kappa_sq_moments.abs() < 1e-12);
        assert!(!r.frame_present);
        assert!(r.oracle.is_none());
    }

    #[test]
    fn eigenstate_is_degenerate() {
        let e = report(r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "0"}}"#, false)
            .unwrap_err();
        assert!(matches!(e, CliError::Degenerate(_)));
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("stationary state"));
    }
}
