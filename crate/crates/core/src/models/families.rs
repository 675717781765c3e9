//! Named states and Hamiltonians on one, two and three qubits.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{build_operator, CVector, HermitianOperator, PauliTerm, StateVector};

/// The four maximally entangled two-qubit Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PhiPlus => "Φ+",
            Self::PhiMinus => "Φ−",
            Self::PsiPlus => "Ψ+",
            Self::PsiMinus => "Ψ−",
        })
    }
}

impl FromStr for BellState {
    type Err = Error;

    /// Accepts `Φ+`, `phi+`, `Φ-`, `Φ−`, `Ψ+`, `psi-` and similar spellings.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_lowercase().replace('−', "-");
        let (name, sign) = norm.split_at(norm.len().saturating_sub(1));
        let plus = match sign {
            "+" => true,
            "-" => false,
            _ => return Err(Error::param("bell", format!("unknown Bell state `{s}`"))),
        };
        match (name, plus) {
            ("φ" | "phi", true) => Ok(Self::PhiPlus),
            ("φ" | "phi", false) => Ok(Self::PhiMinus),
            ("ψ" | "psi", true) => Ok(Self::PsiPlus),
            ("ψ" | "psi", false) => Ok(Self::PsiMinus),
            _ => Err(Error::param("bell", format!("unknown Bell state `{s}`"))),
        }
    }
}

fn real_state(amps: &[f64]) -> StateVector {
    StateVector::from_real(amps).expect("normalized by construction")
}

/// (|00⟩ ± |11⟩)/√2 or (|01⟩ ± |10⟩)/√2.
pub fn bell(kind: BellState) -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    real_state(&match kind {
        BellState::PhiPlus => [r, 0.0, 0.0, r],
        BellState::PhiMinus => [r, 0.0, 0.0, -r],
        BellState::PsiPlus => [0.0, r, r, 0.0],
        BellState::PsiMinus => [0.0, r, -r, 0.0],
    })
}

/// (|000⟩ + |111⟩)/√2.
pub fn ghz() -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    real_state(&[r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, r])
}

/// (|001⟩ + |010⟩ + |100⟩)/√3.
pub fn w() -> StateVector {
    let r = 1.0 / 3f64.sqrt();
    real_state(&[0.0, r, r, 0.0, r, 0.0, 0.0, 0.0])
}

/// ξ|0⟩ + e^{iφ}√(1 − ξ²)|1⟩ for ξ ∈ [0, 1].
pub fn xi_family(xi: f64, phi: f64) -> Result<StateVector> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::param("xi", format!("{xi} not in [0, 1]")));
    }
    if !phi.is_finite() {
        return Err(Error::NonFinite("phase"));
    }
    let b = (1.0 - xi * xi).max(0.0).sqrt();
    StateVector::normalized(CVector::from_vec(vec![Complex64::new(xi, 0.0), Complex64::from_polar(b, phi)]))
}

fn operator(terms: &[PauliTerm], n: usize) -> HermitianOperator {
    build_operator(terms, n).expect("family words are well formed")
}

/// m₀·I + m_x σ_x + m_y σ_y + m_z σ_z.
pub fn single_qubit(m: [f64; 3], m0: f64) -> HermitianOperator {
    operator(
        &[PauliTerm::new(m0, "I"), PauliTerm::new(m[0], "X"), PauliTerm::new(m[1], "Y"), PauliTerm::new(m[2], "Z")],
        1,
    )
}

/// m₁ XX + m₂ ZZ + m₃ XZ + m₄ ZX.
pub fn two_qubit_nonlocal_terms(m: [f64; 4]) -> Vec<PauliTerm> {
    ["XX", "ZZ", "XZ", "ZX"].iter().zip(m).map(|(w, c)| PauliTerm::new(c, *w)).collect()
}

pub fn two_qubit_nonlocal(m: [f64; 4]) -> HermitianOperator {
    operator(&two_qubit_nonlocal_terms(m), 2)
}

/// m₁ IX + m₂ XI + m₃ IZ + m₄ ZI.
pub fn two_qubit_local_terms(m: [f64; 4]) -> Vec<PauliTerm> {
    ["IX", "XI", "IZ", "ZI"].iter().zip(m).map(|(w, c)| PauliTerm::new(c, *w)).collect()
}

pub fn two_qubit_local(m: [f64; 4]) -> HermitianOperator {
    operator(&two_qubit_local_terms(m), 2)
}

/// Three spins with all-pairs XYZ couplings and a uniform field along z:
/// Σ_{i<j} (J_x XᵢXⱼ + J_y YᵢYⱼ + J_z ZᵢZⱼ) + h Σᵢ Zᵢ.
pub fn heisenberg3_terms(jx: f64, jy: f64, jz: f64, h: f64) -> Vec<PauliTerm> {
    let mut terms = Vec::with_capacity(12);
    for (c, p) in [(jx, 'X'), (jy, 'Y'), (jz, 'Z')] {
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let word: String = (0..3).map(|q| if pair.contains(&q) { p } else { 'I' }).collect();
            terms.push(PauliTerm::new(c, word));
        }
    }
    for q in 0..3 {
        let word: String = (0..3).map(|k| if k == q { 'Z' } else { 'I' }).collect();
        terms.push(PauliTerm::new(h, word));
    }
    terms
}

pub fn heisenberg3(jx: f64, jy: f64, jz: f64, h: f64) -> HermitianOperator {
    operator(&heisenberg3_terms(jx, jy, jz, h), 3)
}
