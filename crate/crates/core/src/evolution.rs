//! Evolution under a time-independent Hamiltonian, with the dynamical phase
//! removed and time traded for arc length s = v·t.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{expectation, CMatrix, CVector, HermitianOperator, Spectrum, StateVector};
use crate::moments::is_stationary;

/// Reduced Planck constant in the unit system used throughout the crate.
pub const HBAR: f64 = 1.0;
/// Absolute speed at or below which the trajectory is treated as a point.
pub const STATIONARY_SPEED: f64 = 1e-10;
/// Step in s for central finite-difference derivatives.
pub const FD_STEP: f64 = 1e-4;

/// exp(−iHt) from the eigendecomposition of H.
pub fn propagator(h: &HermitianOperator, t: f64) -> Result<CMatrix> {
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    let spectrum = h.eigen()?;
    Ok(spectral_exponential(&spectrum, t, 0.0))
}

/// V · diag(e^{−i(λ−shift)t}) · V†.
fn spectral_exponential(spectrum: &Spectrum, t: f64, shift: f64) -> CMatrix {
    let v = &spectrum.vectors;
    let mut scaled = v.clone();
    for (k, &lambda) in spectrum.values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -(lambda - shift) * t);
        for x in scaled.column_mut(k).iter_mut() {
            *x *= phase;
        }
    }
    scaled * v.adjoint()
}

/// A Hamiltonian, an initial state, and the conserved quantities of the
/// motion. The spectral decomposition is computed once at construction.
#[derive(Debug, Clone)]
pub struct EvolutionProblem {
    hamiltonian: HermitianOperator,
    initial_state: StateVector,
    energy: f64,
    speed: f64,
    scale_sq: f64,
    spectrum: Spectrum,
    coefficients: CVector,
}

impl EvolutionProblem {
    pub fn new(hamiltonian: HermitianOperator, initial_state: StateVector) -> Result<Self> {
        let energy = expectation(&hamiltonian, &initial_state)?;
        let psi = initial_state.amplitudes();
        let centered = hamiltonian.apply(psi) - psi * Complex64::new(energy, 0.0);
        let speed = centered.norm();
        let scale_sq = hamiltonian.traceless_frobenius_sq();
        let spectrum = hamiltonian.eigen()?;
        let coefficients = spectrum.vectors.adjoint() * psi;
        Ok(Self { hamiltonian, initial_state, energy, speed, scale_sq, spectrum, coefficients })
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial_state
    }

    pub fn dim(&self) -> usize {
        self.initial_state.dim()
    }

    /// E = ⟨ψ₀|H|ψ₀⟩.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// v = ‖(H − E)ψ₀‖ = √⟨(ΔH)²⟩.
    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// True when ψ₀ is (numerically) an eigenstate of H and s is undefined.
    pub fn is_stationary(&self) -> bool {
        is_stationary(self.speed * self.speed, self.scale_sq)
    }

    /// Fails with [`Error::StationaryState`] when the trajectory is a point.
    pub fn require_motion(&self) -> Result<f64> {
        if self.is_stationary() {
            Err(Error::StationaryState { speed: self.speed })
        } else {
            Ok(self.speed)
        }
    }

    pub fn propagator(&self, t: f64) -> Result<CMatrix> {
        if !t.is_finite() {
            return Err(Error::NonFinite("time"));
        }
        Ok(spectral_exponential(&self.spectrum, t, 0.0))
    }

    fn evolve_shifted(&self, t: f64, shift: f64) -> Result<StateVector> {
        if !t.is_finite() {
            return Err(Error::NonFinite("time"));
        }
        if t == 0.0 {
            return Ok(self.initial_state.clone());
        }
        let mut c = self.coefficients.clone();
        for (k, &lambda) in self.spectrum.values.iter().enumerate() {
            c[k] *= Complex64::from_polar(1.0, -(lambda - shift) * t);
        }
        Ok(StateVector::from_unit(&self.spectrum.vectors * c))
    }

    /// ψ(t) = e^{−iHt}ψ₀.
    pub fn evolve(&self, t: f64) -> Result<StateVector> {
        self.evolve_shifted(t, 0.0)
    }

    /// Ψ(t) = e^{iEt}ψ(t), the horizontal lift with ⟨Ψ|Ψ̇⟩ = 0.
    pub fn parallel_transported_state(&self, t: f64) -> Result<StateVector> {
        self.evolve_shifted(t, self.energy)
    }

    /// Ψ at arc length s, i.e. at t = s/v.
    pub fn state_at_arclength(&self, s: f64) -> Result<StateVector> {
        let v = self.require_motion()?;
        self.parallel_transported_state(s / v)
    }

    /// Δh·x = (H − E)x / v.
    pub fn apply_delta_h(&self, x: &CVector) -> Result<CVector> {
        let v = self.require_motion()?;
        let hx = self.hamiltonian.apply(x);
        Ok((hx - x * Complex64::new(self.energy, 0.0)).unscale(v))
    }

    /// The dimensionless operator Δh = (H − E)/v.
    pub fn delta_h(&self) -> Result<HermitianOperator> {
        let v = self.require_motion()?;
        Ok(self.hamiltonian.shifted(-self.energy).scaled(1.0 / v))
    }

    /// T(s) = ∂ₛΨ = −iΔhΨ(s).
    pub fn tangent(&self, s: f64) -> Result<StateVector> {
        let psi = self.state_at_arclength(s)?;
        self.tangent_from(&psi)
    }

    pub(crate) fn tangent_from(&self, psi: &StateVector) -> Result<StateVector> {
        let t = self.apply_delta_h(psi.amplitudes())? * Complex64::new(0.0, -1.0);
        StateVector::normalized(t)
    }

    /// T′(s) = ∂ₛT = −(Δh)²Ψ(s); not normalized.
    pub fn tangent_derivative(&self, s: f64) -> Result<CVector> {
        let psi = self.state_at_arclength(s)?;
        self.tangent_derivative_from(&psi)
    }

    pub(crate) fn tangent_derivative_from(&self, psi: &StateVector) -> Result<CVector> {
        let once = self.apply_delta_h(psi.amplitudes())?;
        Ok(-self.apply_delta_h(&once)?)
    }

    /// The same trajectory under H + c·I.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(self.hamiltonian.shifted(c), self.initial_state.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{build_operator, inner, PauliTerm, I, ONE, ZERO};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_z() -> HermitianOperator {
        build_operator(&[PauliTerm::new(1.0, "Z")], 1).unwrap()
    }

    fn plus() -> StateVector {
        let s = 1.0 / 2f64.sqrt();
        StateVector::from_real(&[s, s]).unwrap()
    }

    fn xzzx() -> EvolutionProblem {
        let h = build_operator(&[PauliTerm::new(1.0, "XZ"), PauliTerm::new(1.0, "ZX")], 2).unwrap();
        EvolutionProblem::new(h, StateVector::from_bits("00").unwrap()).unwrap()
    }

    fn max_diff(a: &CVector, b: &CVector) -> f64 {
        (a - b).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
    }

    fn phase_free_diff(a: &CVector, b: &CVector) -> f64 {
        let ov = inner(a, b);
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { ONE };
        max_diff(&(a * phase), b)
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        let u = propagator(&xzzx().hamiltonian().clone(), 0.0).unwrap();
        assert!(max_diff(&u.column(0).into(), &CVector::from_vec(vec![ONE, ZERO, ZERO, ZERO])) < 1e-14);
        let id = CMatrix::identity(4, 4);
        assert!((u - id).norm() < 1e-14);
    }

    #[test]
    fn propagator_sigma_z_at_pi() {
        let u = propagator(&sigma_z(), std::f64::consts::PI).unwrap();
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![-ONE, -ONE]));
        assert!((u - expected).norm() < 1e-14);
    }

    #[test]
    fn propagator_xzzx_closed_form() {
        let h = xzzx().hamiltonian().clone();
        for &t in &[0.3, 1.1, 2.7] {
            let u = propagator(&h, t).unwrap();
            let (cc, ss) = (t.cos() * t.cos(), t.sin() * t.sin());
            let m = c(0.0, -0.5 * (2.0 * t).sin());
            #[rustfmt::skip]
            let expected = CMatrix::from_row_slice(4, 4, &[
                c(cc, 0.0), m, m, c(ss, 0.0),
                m, c(cc, 0.0), c(-ss, 0.0), -m,
                m, c(-ss, 0.0), c(cc, 0.0), -m,
                c(ss, 0.0), -m, -m, c(cc, 0.0),
            ]);
            assert!((&u - expected).norm() < 1e-13, "t = {t}");
            assert!((u.adjoint() * &u - CMatrix::identity(4, 4)).norm() < 1e-12);
        }
    }

    #[test]
    fn xzzx_evolved_state() {
        let p = xzzx();
        for &t in &[0.0, 0.4, 1.9] {
            let psi = p.evolve(t).unwrap();
            let half = c(0.0, -0.5 * (2.0 * t).sin());
            let expected = CVector::from_vec(vec![c(t.cos().powi(2), 0.0), half, half, c(t.sin().powi(2), 0.0)]);
            assert!(max_diff(psi.amplitudes(), &expected) < 1e-14);
        }
        assert_abs_diff_eq!(p.speed(), 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(p.energy(), 0.0);
    }

    #[test]
    fn sigma_z_plus_phases() {
        let p = EvolutionProblem::new(sigma_z(), plus()).unwrap();
        let t = 0.77;
        let s = 1.0 / 2f64.sqrt();
        let expected = CVector::from_vec(vec![Complex64::from_polar(s, -t), Complex64::from_polar(s, t)]);
        assert!(max_diff(p.evolve(t).unwrap().amplitudes(), &expected) < 1e-15);
        assert!(max_diff(p.parallel_transported_state(t).unwrap().amplitudes(), &expected) < 1e-15);
        let tan = p.tangent(0.0).unwrap();
        let expected = CVector::from_vec(vec![c(0.0, -s), c(0.0, s)]);
        assert!(max_diff(tan.amplitudes(), &expected) < 1e-15);
    }

    #[test]
    fn transported_phase_offset_matches_energy() {
        let a = (std::f64::consts::PI / 8.0).cos();
        let b = (std::f64::consts::PI / 8.0).sin();
        let p = EvolutionProblem::new(sigma_z(), StateVector::from_real(&[a, b]).unwrap()).unwrap();
        assert_abs_diff_eq!(p.energy(), 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        let t = 1.3;
        let psi = p.evolve(t).unwrap();
        let big = p.parallel_transported_state(t).unwrap();
        let expected = psi.amplitudes() * Complex64::from_polar(1.0, t / 2f64.sqrt());
        assert!(max_diff(big.amplitudes(), &expected) < 1e-14);
    }

    #[test]
    fn xz_zx_productrclength_and_tangents() {
        let p = xzzx();
        let r = 1.0 / 2f64.sqrt();
        for &s in &[0.0, 0.5, 1.7] {
            let t = s / 2f64.sqrt();
            assert!(max_diff(p.state_at_arclength(s).unwrap().amplitudes(), p.evolve(t).unwrap().amplitudes()) < 1e-14);
            let a = 2f64.sqrt() * s;
            let expected = CVector::from_vec(vec![
                c(-r * a.sin(), 0.0),
                c(0.0, -r * a.cos()),
                c(0.0, -r * a.cos()),
                c(r * a.sin(), 0.0),
            ]);
            assert!(max_diff(p.tangent(s).unwrap().amplitudes(), &expected) < 1e-14);
            let expected = CVector::from_vec(vec![
                c(-a.cos(), 0.0),
                I * a.sin(),
                I * a.sin(),
                c(a.cos(), 0.0),
            ]);
            assert!(max_diff(&p.tangent_derivative(s).unwrap(), &expected) < 1e-14);
        }
    }

    #[test]
    fn eigenstate_is_stationary() {
        let p = EvolutionProblem::new(sigma_z(), StateVector::basis(2, 0).unwrap()).unwrap();
        assert!(p.is_stationary());
        assert!(matches!(p.state_at_arclength(0.0), Err(Error::StationaryState { .. })));
        assert!(matches!(p.tangent(0.0), Err(Error::StationaryState { .. })));
        // The unmodified evolution is still well defined.
        assert!(p.evolve(1.0).is_ok());
    }

    #[test]
    fn tangent_derivative_for_unit_square() {
        let p = EvolutionProblem::new(sigma_z(), plus()).unwrap();
        let s = 0.9;
        let psi = p.state_at_arclength(s).unwrap();
        assert!(max_diff(&p.tangent_derivative(s).unwrap(), &(-psi.amplitudes())) < 1e-15);
    }

    #[test]
    fn tangent_matches_finite_difference() {
        let p = xzzx();
        let s = 0.6;
        let h = FD_STEP;
        let fwd = p.state_at_arclength(s + h).unwrap();
        let bwd = p.state_at_arclength(s - h).unwrap();
        let fd = (fwd.amplitudes() - bwd.amplitudes()) / Complex64::new(2.0 * h, 0.0);
        assert!(max_diff(&fd, p.tangent(s).unwrap().amplitudes()) < 1e-8);
        let fwd = p.tangent(s + h).unwrap();
        let bwd = p.tangent(s - h).unwrap();
        let fd = (fwd.amplitudes() - bwd.amplitudes()) / Complex64::new(2.0 * h, 0.0);
        assert!(max_diff(&fd, &p.tangent_derivative(s).unwrap()) < 1e-8);
        assert!(phase_free_diff(&fd, &p.tangent_derivative(s).unwrap()) < 1e-8);
    }
}
