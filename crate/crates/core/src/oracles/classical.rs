//! Frenet–Serret curvature and torsion of sampled curves in ℝ³, and the
//! geodesic curvature of circles of latitude on a sphere.

use crate::error::{Error, Result};

/// |r′ × r″| below which the osculating plane is undefined.
pub const DEGENERATE_CROSS: f64 = 1e-12;
const STENCIL: usize = 5;

/// A curve sampled at strictly increasing parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceCurveSamples {
    points: Vec<[f64; 3]>,
    params: Vec<f64>,
}

impl SpaceCurveSamples {
    pub fn new(points: Vec<[f64; 3]>, params: Vec<f64>) -> Result<Self> {
        if points.len() != params.len() {
            return Err(Error::DimensionMismatch { expected: params.len(), found: points.len() });
        }
        if points.len() < STENCIL {
            return Err(Error::TooFewSamples { needed: STENCIL, found: points.len() });
        }
        if params.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::param("params", "must be strictly increasing"));
        }
        if points.iter().flatten().chain(&params).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("curve samples"));
        }
        Ok(Self { points, params })
    }

    /// Samples `r(u)` at `n` evenly spaced parameters in [lo, hi].
    pub fn from_fn<F: Fn(f64) -> [f64; 3]>(r: F, lo: f64, hi: f64, n: usize) -> Result<Self> {
        let denom = n.saturating_sub(1).max(1) as f64;
        let params: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / denom).collect();
        Self::new(params.iter().map(|&u| r(u)).collect(), params)
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }
}

/// Curvature and torsion at the interior samples (the first and last two
/// samples lack a centred stencil and are omitted).
#[derive(Debug, Clone, PartialEq)]
pub struct FsProfile {
    pub params: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

/// Finite-difference weights for derivatives 0..=max_order at `z` on the
/// given nodes (Fornberg's recursion). Returns w[order][node].
fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// κ = |r′×r″|/|r′|³ and τ = (r′×r″)·r‴/|r′×r″|² from five-point stencils.
/// Both are invariant under reparametrization, so any regular parameter
/// works.
pub fn classical_fs(samples: &SpaceCurveSamples) -> Result<FsProfile> {
    let n = samples.points.len();
    let half = STENCIL / 2;
    let mut out = FsProfile { params: vec![], kappa: vec![], tau: vec![] };
    for i in half..n - half {
        let window = i - half..=i + half;
        let nodes = &samples.params[window.clone()];
        let w = fornberg_weights(samples.params[i], nodes, 3);
        let mut d = [[0.0; 3]; 4];
        for (order, row) in w.iter().enumerate().skip(1) {
            for (k, p) in samples.points[window.clone()].iter().enumerate() {
                for axis in 0..3 {
                    d[order][axis] += row[k] * p[axis];
                }
            }
        }
        let c = cross(d[1], d[2]);
        let cn2 = dot(c, c);
        if cn2.sqrt() < DEGENERATE_CROSS {
            return Err(Error::DegenerateCurve { index: i, cross: cn2.sqrt() });
        }
        let speed = dot(d[1], d[1]).sqrt();
        out.params.push(samples.params[i]);
        out.kappa.push(cn2.sqrt() / speed.powi(3));
        out.tau.push(dot(c, d[3]) / cn2);
    }
    Ok(out)
}

/// Geodesic curvature cot(θ)/R of the circle at polar angle θ on a sphere
/// of radius R.
pub fn sphere_geodesic_curvature(theta: f64, radius: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::param("radius", format!("must be positive, got {radius}")));
    }
    if !theta.is_finite() || theta.sin() <= 1e-10 || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::param("theta", format!("{theta} is at or beyond a pole")));
    }
    Ok(theta.cos() / theta.sin() / radius)
}
