//! Sampled trajectories ψ(t) = e^{−iHt}ψ₀ as CSV rows.

use qcurve_core::models::bloch::state_to_bloch;
use qcurve_core::{central_moments, curvature_from_moments, torsion_from_moments};
use qcurve_core::{EvolutionProblem, StateVector};

use crate::error::{CliError, Result};
use crate::spec::Instance;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

pub fn header(dim: usize) -> Vec<String> {
    let mut h: Vec<String> = ["t", "s", "fidelity_to_initial"].map(String::from).to_vec();
    for k in 0..dim {
        h.push(format!("re_a{k}"));
        h.push(format!("im_a{k}"));
    }
    if dim == 2 {
        h.extend(["ax", "ay", "az"].map(String::from));
    }
    h.extend(["kappa_sq", "tau_sq"].map(String::from));
    h
}

/// `steps` evenly spaced times from 0 to `t_max`. κ² and τ² are constant
/// along the curve and repeated on every row (NaN for a stationary state).
pub fn sample(instance: &Instance, t_max: f64, steps: usize) -> Result<Trajectory> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(CliError::schema("--t-max", "must be positive"));
    }
    if steps < 2 {
        return Err(CliError::schema("--steps", "must be at least 2"));
    }
    let problem = EvolutionProblem::new(instance.hamiltonian.clone(), instance.state.clone())?;
    let m = central_moments(problem.hamiltonian(), problem.initial_state())?;
    let mut warnings = vec![];
    let (kappa, tau) = match (curvature_from_moments(&m), torsion_from_moments(&m)) {
        (Ok(k), Ok(t)) => (k, t),
        (Err(e), _) | (_, Err(e)) => {
            warnings.push(format!("{e}"));
            (f64::NAN, f64::NAN)
        }
    };
    let dim = problem.dim();
    let v = problem.speed();
    let psi0: &StateVector = problem.initial_state();
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = t_max * k as f64 / (steps - 1) as f64;
        let psi = problem.evolve(t)?;
        let mut r = vec![t, v * t, psi0.fidelity(&psi)];
        for a in psi.amplitudes().iter() {
            r.extend([a.re, a.im]);
        }
        if dim == 2 {
            r.extend(state_to_bloch(&psi)?.components());
        }
        r.extend([kappa, tau]);
        rows.push(r);
    }
    Ok(Trajectory { header: header(dim), rows, warnings })
}
