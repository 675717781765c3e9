//! Closed-form curvature and torsion coefficients for the model families,
//! and the geodesic efficiency of the single-qubit ξ family.

use crate::error::{Error, Result};

/// Denominators with magnitude at or below this are treated as zero.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-14;

/// A (κ², τ²) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub kappa_sq: f64,
    pub tau_sq: f64,
}

impl Coefficients {
    pub fn new(kappa_sq: f64, tau_sq: f64) -> Self {
        Self { kappa_sq, tau_sq }
    }
}

fn nonzero(x: f64, what: &'static str) -> Result<f64> {
    if x.abs() <= DEGENERATE_DENOMINATOR || !x.is_finite() {
        Err(Error::DegenerateFormula(what))
    } else {
        Ok(x)
    }
}

/// |00⟩ under m₁XX + m₂ZZ + m₃XZ + m₄ZX.
pub fn product_nonlocal(m: [f64; 4]) -> Result<Coefficients> {
    let [m1, m2, m3, m4] = m;
    let d = nonzero(m1 * m1 + m3 * m3 + m4 * m4, "product_nonlocal: m1² + m3² + m4²")?;
    let kappa_sq = 4.0 * (m2 * m2 * m3 * m3 + m2 * m2 * m4 * m4 + m3 * m3 * m4 * m4) / (d * d);
    let tau_sq = 4.0 * (m3 * m3 + m4 * m4) * (m1 * m2 - m3 * m4).powi(2) / d.powi(3);
    Ok(Coefficients::new(kappa_sq, tau_sq))
}

/// |Φ⁺⟩ under m₁IX + m₂XI + m₃IZ + m₄ZI; κ² = τ².
pub fn bell_local(m: [f64; 4]) -> Result<Coefficients> {
    let [m1, m2, m3, m4] = m;
    let d = nonzero((m1 + m2).powi(2) + (m3 + m4).powi(2), "bell_local: (m1+m2)² + (m3+m4)²")?;
    let k = 4.0 * (m1 * m4 - m2 * m3).powi(2) / (d * d);
    Ok(Coefficients::new(k, k))
}

/// |00⟩ under m₁IX + m₂XI + m₃IZ + m₄ZI.
pub fn product_local(m: [f64; 4]) -> Result<Coefficients> {
    let [m1, m2, m3, m4] = m;
    let (a, b) = (m1 * m1, m2 * m2);
    let d = nonzero(a + b, "product_local: m1² + m2²")?;
    let kappa_sq = 4.0 * (a * b + a * m3 * m3 + b * m4 * m4) / (d * d);
    let tau_sq = 4.0 * a * b * (a + b + (m3 - m4).powi(2)) / d.powi(3);
    Ok(Coefficients::new(kappa_sq, tau_sq))
}

/// κ² − τ² for [`product_local`]: 4(m₃m₁² + m₄m₂²)²/(m₁² + m₂²)³.
pub fn product_local_gap(m: [f64; 4]) -> Result<f64> {
    let [m1, m2, m3, m4] = m;
    let d = nonzero(m1 * m1 + m2 * m2, "product_local: m1² + m2²")?;
    Ok(4.0 * (m3 * m1 * m1 + m4 * m2 * m2).powi(2) / d.powi(3))
}

/// |Φ⁺⟩ under m₁XX + m₂ZZ + m₃XZ + m₄ZX: (4[(m₁+m₂)/(m₃−m₄)]², 0).
pub fn bell_nonlocal(m: [f64; 4]) -> Result<Coefficients> {
    let [m1, m2, m3, m4] = m;
    let d = nonzero(m3 - m4, "bell_nonlocal: m3 − m4")?;
    Ok(Coefficients::new(4.0 * ((m1 + m2) / d).powi(2), 0.0))
}

/// GHZ under the three-spin Heisenberg model. Returns (0, 0) where the
/// denominator 3h² + (J_x − J_y)² vanishes, the limit along J_x = J_y.
pub fn ghz_heisenberg(jx: f64, jy: f64, jz: f64, h: f64) -> Coefficients {
    let a2 = (jx - jy).powi(2);
    let d = 3.0 * h * h + a2;
    if d <= DEGENERATE_DENOMINATOR {
        return Coefficients::new(0.0, 0.0);
    }
    let g2 = (jx + jy - 2.0 * jz).powi(2);
    let kappa_sq = 4.0 / 3.0 * a2 * (h * h + g2) / (d * d);
    let tau_sq = kappa_sq - 4.0 / 3.0 * a2 * a2 * g2 / d.powi(3);
    Coefficients::new(kappa_sq, tau_sq)
}

/// W under the three-spin Heisenberg model; τ² = 0.
pub fn w_heisenberg(jx: f64, jy: f64, jz: f64, h: f64) -> Result<Coefficients> {
    let d = nonzero(jx - jy, "w_heisenberg: Jx − Jy")?;
    Ok(Coefficients::new(4.0 / 3.0 * ((2.0 * h + jx + jy - 2.0 * jz) / d).powi(2), 0.0))
}

fn check_xi_open(xi: f64) -> Result<()> {
    if xi > 0.0 && xi < 1.0 {
        Ok(())
    } else {
        Err(Error::param("xi", format!("{xi} not in (0, 1)")))
    }
}

/// κ²(ξ) = (1 − 2ξ²)²/[ξ²(1 − ξ²)] for H ∝ σ_z.
pub fn xi_curvature(xi: f64) -> Result<f64> {
    check_xi_open(xi)?;
    Ok((1.0 - 2.0 * xi * xi).powi(2) / (xi * xi * (1.0 - xi * xi)))
}

/// α₄(ξ) = (1 − 3ξ² + 3ξ⁴)/[ξ²(1 − ξ²)] for H ∝ σ_z.
pub fn xi_kurtosis(xi: f64) -> Result<f64> {
    check_xi_open(xi)?;
    let x2 = xi * xi;
    Ok((1.0 - 3.0 * x2 + 3.0 * x2 * x2) / (x2 * (1.0 - x2)))
}

/// η(t; ξ) for H = mσ_z from the overlap and the path length 2mξ√(1−ξ²)t.
pub fn xi_efficiency(xi: f64, m: f64, t: f64) -> Result<f64> {
    check_xi_open(xi)?;
    if !(m > 0.0 && t > 0.0) {
        return Err(Error::param("t", "m and t must be positive"));
    }
    let mt = m * t;
    let c = (2.0 * xi * xi - 1.0).powi(2);
    let overlap = (mt.cos().powi(2) + c * mt.sin().powi(2)).sqrt().min(1.0);
    Ok(overlap.acos() / (2.0 * xi * (1.0 - xi * xi).sqrt() * mt))
}

/// η(ξ) at t = π/(4m): (2/π)·arccos(√(2ξ⁴ − 2ξ² + 1))/(ξ√(1 − ξ²)).
pub fn xi_efficiency_quarter(xi: f64) -> Result<f64> {
    check_xi_open(xi)?;
    let x2 = xi * xi;
    let arg = (2.0 * x2 * x2 - 2.0 * x2 + 1.0).sqrt().min(1.0);
    Ok(2.0 / std::f64::consts::PI * arg.acos() / (xi * (1.0 - x2).sqrt()))
}
