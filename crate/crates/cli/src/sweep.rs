//! One-parameter sweeps of κ², τ², η, α₄ and α₃².

use std::f64::consts::FRAC_PI_4;

use qcurve_core::models::efficiency::geodesic_efficiency;
use qcurve_core::{central_moments, curvature_from_moments, torsion_from_moments, EvolutionProblem};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::spec::Problem;

pub const HEADER: [&str; 6] = ["param", "kappa_sq", "tau_sq", "eta", "alpha4", "alpha3_sq"];

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub rows: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

/// `points` evenly spaced values from `from` to `to` inclusive.
pub fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::schema("--from/--to", "must be finite"));
    }
    match points {
        0 => Err(CliError::schema("--points", "must be at least 1")),
        1 => Ok(vec![from]),
        n => Ok((0..n).map(|k| from + (to - from) * k as f64 / (n - 1) as f64).collect()),
    }
}

fn row(problem: &Problem, value: f64) -> Result<(Vec<f64>, Option<String>)> {
    let inst = problem.instance()?;
    let h0_radius = inst.hamiltonian.traceless_spectral_radius()?;
    let evolution = EvolutionProblem::new(inst.hamiltonian, inst.state)?;
    let m = central_moments(evolution.hamiltonian(), evolution.initial_state())?;
    let (Ok(kappa), Ok(tau)) = (curvature_from_moments(&m), torsion_from_moments(&m)) else {
        let nan = f64::NAN;
        return Ok((vec![value, nan, nan, nan, nan, nan], Some(format!("stationary state at {value:?}"))));
    };
    let t = problem.options.eta_time.unwrap_or(FRAC_PI_4 / h0_radius);
    let eta = geodesic_efficiency(&evolution, t)?;
    let (a3, a4) = (m.alpha3.expect("non-stationary"), m.alpha4.expect("non-stationary"));
    Ok((vec![value, kappa, tau, eta, a4, a3 * a3], None))
}

/// Evaluates every grid point in parallel; rows keep grid order.
pub fn run(problem: &Problem, param: &str, values: &[f64]) -> Result<Sweep> {
    problem.with_parameter(param, values.first().copied().unwrap_or(0.0))?;
    let results: Vec<Result<(Vec<f64>, Option<String>)>> = values
        .par_iter()
        .map(|&v| row(&problem.with_parameter(param, v)?, v))
        .collect();
    let mut sweep = Sweep { rows: Vec::with_capacity(values.len()), warnings: vec![] };
    for r in results {
        let (row, warning) = r?;
        sweep.rows.push(row);
        sweep.warnings.extend(warning);
    }
    Ok(sweep)
}
