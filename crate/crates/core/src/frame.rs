//! Projector geometry along the horizontal lift Ψ(s): the covariant
//! derivative of the tangent, the binormal direction, and the moving frame
//! {Ψ, T, N, …} with its Cartan matrix.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{EvolutionProblem, FD_STEP};
use crate::hilbert::{inner, norm_sq, orthonormalize_against, CVector, StateVector, ZERO};

/// ‖N̄‖ above which a normalized binormal N is emitted.
pub const BINORMAL_THRESHOLD: f64 = 1e-8;

/// Orthonormal moving frame at one arc length.
#[derive(Debug, Clone)]
pub struct QuantumFrame {
    pub arclength: f64,
    pub psi: StateVector,
    pub tangent: StateVector,
    /// N̄ = P^(T) P^(Ψ) T′, possibly numerically zero.
    pub binormal_raw: CVector,
    /// N̄/‖N̄‖ when ‖N̄‖ > [`BINORMAL_THRESHOLD`].
    pub binormal: Option<StateVector>,
    /// Completion of the frame to a basis of the whole space.
    pub extra: Vec<StateVector>,
    pub kappa_sq: f64,
    pub tau_sq: f64,
    /// Row i holds ⟨frame_j|∂ₛ frame_i⟩ for frame = (Ψ, T, N).
    pub cartan: Matrix3<Complex64>,
}

impl QuantumFrame {
    /// Ψ, T, N (if present) followed by the completion vectors.
    pub fn vectors(&self) -> Vec<&StateVector> {
        let mut out = vec![&self.psi, &self.tangent];
        out.extend(self.binormal.iter());
        out.extend(self.extra.iter());
        out
    }
}

struct Local {
    psi: StateVector,
    tangent: StateVector,
    tangent_derivative: CVector,
    /// P^(Ψ) T′.
    covariant: CVector,
    /// P^(T) P^(Ψ) T′.
    binormal_raw: CVector,
}

fn project_out(unit: &CVector, x: &CVector) -> CVector {
    x - unit * inner(unit, x)
}

fn local(problem: &EvolutionProblem, s: f64) -> Result<Local> {
    let psi = problem.state_at_arclength(s)?;
    let tangent = problem.tangent_from(&psi)?;
    let tangent_derivative = problem.tangent_derivative_from(&psi)?;
    let covariant = project_out(psi.amplitudes(), &tangent_derivative);
    let binormal_raw = project_out(tangent.amplitudes(), &covariant);
    Ok(Local { psi, tangent, tangent_derivative, covariant, binormal_raw })
}

/// κ² = ‖P^(Ψ) T′(s)‖².
pub fn curvature_geometric(problem: &EvolutionProblem, s: f64) -> Result<f64> {
    Ok(norm_sq(&local(problem, s)?.covariant))
}

/// N̄(s) = P^(T) P^(Ψ) T′(s).
pub fn binormal_raw(problem: &EvolutionProblem, s: f64) -> Result<CVector> {
    Ok(local(problem, s)?.binormal_raw)
}

/// τ² = ‖N̄(s)‖².
pub fn torsion_geometric(problem: &EvolutionProblem, s: f64) -> Result<f64> {
    Ok(norm_sq(&local(problem, s)?.binormal_raw))
}

fn unit_binormal(raw: &CVector) -> Option<CVector> {
    let n = norm_sq(raw).sqrt();
    (n > BINORMAL_THRESHOLD).then(|| raw.unscale(n))
}

/// Builds the frame at `s`. Completion vectors come from Gram–Schmidt over
/// `completion_seed` (canonical basis when `None`), skipping seeds already
/// in the span.
pub fn build_frame(
    problem: &EvolutionProblem,
    s: f64,
    completion_seed: Option<&[CVector]>,
) -> Result<QuantumFrame> {
    let loc = local(problem, s)?;
    let binormal = unit_binormal(&loc.binormal_raw);
    let cartan = cartan_from_local(problem, s, &loc, binormal.as_ref())?;
    let dim = problem.dim();

    let mut basis = vec![loc.psi.amplitudes().clone(), loc.tangent.amplitudes().clone()];
    basis.extend(binormal.iter().cloned());
    let needed = dim - basis.len();
    let canonical: Vec<CVector>;
    let seeds = match completion_seed {
        Some(seeds) => seeds,
        None => {
            canonical = (0..dim)
                .map(|k| {
                    let mut e = CVector::zeros(dim);
                    e[k] = Complex64::new(1.0, 0.0);
                    e
                })
                .collect();
            &canonical
        }
    };
    let mut extra = Vec::with_capacity(needed);
    for seed in seeds {
        if extra.len() == needed {
            break;
        }
        if seed.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: seed.len() });
        }
        if let Some(u) = orthonormalize_against(&basis, seed) {
            basis.push(u.clone());
            extra.push(StateVector::from_unit(u));
        }
    }
    if extra.len() < needed {
        return Err(Error::CompletionFailed { needed, found: extra.len() });
    }

    Ok(QuantumFrame {
        arclength: s,
        kappa_sq: norm_sq(&loc.covariant),
        tau_sq: norm_sq(&loc.binormal_raw),
        binormal: binormal.map(StateVector::from_unit),
        binormal_raw: loc.binormal_raw,
        psi: loc.psi,
        tangent: loc.tangent,
        extra,
        cartan,
    })
}

/// Matrix M with ∂ₛ(Ψ, T, N)ᵀ = M (Ψ, T, N)ᵀ restricted to the frame.
///
/// ∂ₛΨ = T and ∂ₛT = T′ are analytic; ∂ₛN uses a five-point central
/// difference with step [`FD_STEP`]. Without a binormal only the upper-left
/// 2×2 block is filled.
pub fn cartan_matrix(problem: &EvolutionProblem, s: f64) -> Result<Matrix3<Complex64>> {
    let loc = local(problem, s)?;
    let binormal = unit_binormal(&loc.binormal_raw);
    cartan_from_local(problem, s, &loc, binormal.as_ref())
}

fn cartan_from_local(
    problem: &EvolutionProblem,
    s: f64,
    loc: &Local,
    binormal: Option<&CVector>,
) -> Result<Matrix3<Complex64>> {
    let psi = loc.psi.amplitudes();
    let tan = loc.tangent.amplitudes();
    let mut frame: Vec<&CVector> = vec![psi, tan];
    frame.extend(binormal);

    let mut derivatives = vec![tan.clone(), loc.tangent_derivative.clone()];
    if binormal.is_some() {
        derivatives.push(binormal_derivative(problem, s)?);
    }

    let mut m = Matrix3::from_element(ZERO);
    for (i, d) in derivatives.iter().enumerate() {
        for (j, f) in frame.iter().enumerate() {
            m[(i, j)] = inner(f, d);
        }
    }
    Ok(m)
}

fn binormal_at(problem: &EvolutionProblem, s: f64) -> Result<CVector> {
    let raw = local(problem, s)?.binormal_raw;
    unit_binormal(&raw).ok_or(Error::DegenerateFormula("binormal vanishes near requested arc length"))
}

fn binormal_derivative(problem: &EvolutionProblem, s: f64) -> Result<CVector> {
    let h = FD_STEP;
    let p1 = binormal_at(problem, s + h)?;
    let m1 = binormal_at(problem, s - h)?;
    let p2 = binormal_at(problem, s + 2.0 * h)?;
    let m2 = binormal_at(problem, s - 2.0 * h)?;
    // (−f(s+2h) + 8f(s+h) − 8f(s−h) + f(s−2h)) / 12h
    let num = (&p1 - &m1) * Complex64::new(8.0, 0.0) - (&p2 - &m2);
    Ok(num.unscale(12.0 * h))
}
