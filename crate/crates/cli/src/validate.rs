//! Built-in validation suite: closed-form reference values, fixture
//! problems, and randomized agreement between independent routes.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::Path;

use qcurve_core::models::bloch::{curvature_bloch, torsion_bloch, BlochVector, MagneticVector};
use qcurve_core::models::efficiency::geodesic_efficiency;
use qcurve_core::models::families::{
    bell, ghz, heisenberg3, single_qubit, two_qubit_local, two_qubit_nonlocal, w, xi_family, BellState,
};
use qcurve_core::models::reference::{
    bell_nonlocal, ghz_heisenberg, product_nonlocal, bell_local, product_local, w_heisenberg, xi_curvature, xi_efficiency_quarter,
    xi_kurtosis, Coefficients,
};
use qcurve_core::oracles::lt::default_dt_grid;
use qcurve_core::sampling::{random_hermitian, random_state};
use qcurve_core::{
    build_frame, central_moments, classical_fs, curvature_from_moments, lt_curvature, lt_torsion,
    sphere_geodesic_curvature, torsion_from_moments, CVector, Complex64, EvolutionProblem, HermitianOperator,
    SpaceCurveSamples, StateVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::spec::Problem;

/// Amplitude index and size of the `--perturb` negative control.
pub const PERTURB_INDEX: usize = 1;
pub const PERTURB_DELTA: f64 = 1e-3;

/// μ₂/‖H₀‖²_F below which a random draw counts as a near-eigenstate and is
/// skipped by the randomized cases.
pub const CONDITIONING_FLOOR: f64 = 1e-3;

const SEED: u64 = 0x5eed;
const EMBEDDED: [(&str, &str); 9] = [
    ("xz_zx_product", include_str!("../fixtures/xz_zx_product.json")),
    ("sigma_z_equator", include_str!("../fixtures/sigma_z_equator.json")),
    ("sigma_z_tilted", include_str!("../fixtures/sigma_z_tilted.json")),
    ("product_nonlocal", include_str!("../fixtures/product_nonlocal.json")),
    ("bell_local", include_str!("../fixtures/bell_local.json")),
    ("product_local", include_str!("../fixtures/product_local.json")),
    ("bell_nonlocal", include_str!("../fixtures/bell_nonlocal.json")),
    ("ghz_heisenberg", include_str!("../fixtures/ghz_heisenberg.json")),
    ("w_heisenberg", include_str!("../fixtures/w_heisenberg.json")),
];

/// Fixture problems by name; a fixture that fails to parse fails its case.
#[derive(Debug, Clone)]
pub struct Fixtures {
    problems: BTreeMap<String, std::result::Result<Problem, String>>,
}

impl Fixtures {
    pub fn names() -> impl Iterator<Item = &'static str> {
        EMBEDDED.iter().map(|(n, _)| *n)
    }

    pub fn embedded() -> Self {
        let problems = EMBEDDED
            .iter()
            .map(|(name, text)| (name.to_string(), Problem::from_json(text).map_err(|e| e.to_string())))
            .collect();
        Self { problems }
    }

    /// Reads `<name>.json` for every fixture name from `dir`.
    pub fn from_dir(dir: &Path) -> Self {
        let problems = Self::names()
            .map(|name| {
                let path = dir.join(format!("{name}.json"));
                let parsed = std::fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.display()))
                    .and_then(|text| Problem::from_json(&text).map_err(|e| e.to_string()));
                (name.to_string(), parsed)
            })
            .collect();
        Self { problems }
    }

    /// Writes the embedded fixtures into `dir`.
    pub fn export(dir: &Path) -> Result<()> {
        for (name, text) in EMBEDDED {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, text).map_err(|e| CliError::io(path, e))?;
        }
        Ok(())
    }

    /// Adds [`PERTURB_DELTA`] to amplitude [`PERTURB_INDEX`] of one fixture.
    pub fn perturb(&mut self, name: &str) -> Result<()> {
        let slot = self
            .problems
            .get_mut(name)
            .ok_or_else(|| CliError::schema("--perturb", format!("unknown fixture `{name}`")))?;
        if let Ok(p) = slot {
            *slot = p.with_perturbed_amplitude(PERTURB_INDEX, PERTURB_DELTA).map_err(|e| e.to_string());
        }
        Ok(())
    }

    fn get(&self, name: &str) -> Result<&Problem> {
        match self.problems.get(name) {
            Some(Ok(p)) => Ok(p),
            Some(Err(e)) => Err(CliError::schema(format!("fixture {name}"), e)),
            None => Err(CliError::schema(format!("fixture {name}"), "missing")),
        }
    }
}

type Check = Box<dyn Fn(&Fixtures) -> Result<f64> + Send + Sync>;

pub struct Case {
    pub name: String,
    pub tolerance: f64,
    check: Check,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub name: String,
    pub tolerance: f64,
    /// Worst residual, or the error that stopped the case.
    pub outcome: std::result::Result<f64, String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Ok(r) if r <= self.tolerance)
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        match &self.outcome {
            Ok(r) => format!("{status} {:<34} residual {r:.3e} (tolerance {:.0e})", self.name, self.tolerance),
            Err(e) => format!("{status} {:<34} error: {e}", self.name),
        }
    }
}

fn case(name: &str, tolerance: f64, check: impl Fn(&Fixtures) -> Result<f64> + Send + Sync + 'static) -> Case {
    Case { name: name.into(), tolerance, check: Box::new(check) }
}

/// |got − want| relative to max(|want|, 0.1·max(1, κ²)), so values near
/// zero are compared on the scale of the curvature.
fn coefficient_residual(got: Coefficients, want: Coefficients) -> f64 {
    let floor = 0.1 * want.kappa_sq.abs().max(1.0);
    let r = |g: f64, w: f64| (g - w).abs() / w.abs().max(floor);
    r(got.kappa_sq, want.kappa_sq).max(r(got.tau_sq, want.tau_sq))
}

/// Worst residual of the moments and geometric routes against `want`.
fn both_routes(h: &HermitianOperator, psi: &StateVector, want: Coefficients) -> Result<f64> {
    let m = central_moments(h, psi)?;
    let mom = Coefficients::new(curvature_from_moments(&m)?, torsion_from_moments(&m)?);
    let frame = build_frame(&EvolutionProblem::new(h.clone(), psi.clone())?, 0.0, None)?;
    let geo = Coefficients::new(frame.kappa_sq, frame.tau_sq);
    Ok(coefficient_residual(mom, want).max(coefficient_residual(geo, want)))
}

fn well_conditioned(h: &HermitianOperator, psi: &StateVector) -> Result<bool> {
    Ok(central_moments(h, psi)?.mu2 >= CONDITIONING_FLOOR * h.traceless_frobenius_sq())
}

fn fixture_case(
    name: &'static str,
    want: impl Fn(&Problem) -> qcurve_core::Result<Coefficients> + Send + Sync + 'static,
) -> Case {
    case(name, 1e-9, move |fx| {
        let p = fx.get(name)?;
        let inst = p.instance()?;
        // Reference values always come from the unperturbed parameters.
        both_routes(&inst.hamiltonian, &inst.state, want(p)?)
    })
}

fn params4(p: &Problem, names: [&str; 4]) -> [f64; 4] {
    names.map(|n| p.parameter(n).unwrap_or(0.0))
}

fn ms(p: &Problem) -> [f64; 4] {
    params4(p, ["m1", "m2", "m3", "m4"])
}

fn js(p: &Problem) -> [f64; 4] {
    params4(p, ["Jx", "Jy", "Jz", "h"])
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_diff(a: &CVector, b: &CVector) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

fn phase_free_diff(a: &CVector, b: &CVector) -> f64 {
    let ov = a.dotc(b);
    let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { c(1.0, 0.0) };
    max_diff(&(a * phase), b)
}

fn xzzx_problem(fx: &Fixtures) -> Result<EvolutionProblem> {
    let inst = fx.get("xz_zx_product")?.instance()?;
    Ok(EvolutionProblem::new(inst.hamiltonian, inst.state)?)
}

/// Ψ(s), T(s), N(s) for |00⟩ under XZ + ZX, with a = √2·s.
fn xzzx_frame(s: f64) -> [CVector; 3] {
    let a = 2f64.sqrt() * s;
    let (ca, sa) = (a.cos(), a.sin());
    let r = FRAC_1_SQRT_2;
    [
        CVector::from_vec(vec![c((0.5 * a).cos().powi(2), 0.0), c(0.0, -0.5 * sa), c(0.0, -0.5 * sa), c((0.5 * a).sin().powi(2), 0.0)]),
        CVector::from_vec(vec![c(-r * sa, 0.0), c(0.0, -r * ca), c(0.0, -r * ca), c(r * sa, 0.0)]),
        CVector::from_vec(vec![c(0.5 - 0.5 * ca, 0.0), c(0.0, 0.5 * sa), c(0.0, 0.5 * sa), c(0.5 + 0.5 * ca, 0.0)]),
    ]
}

const XZZX_S: [f64; 5] = [0.0, 0.3, 0.9, 1.7, 3.1];

fn xi_grid() -> impl Iterator<Item = f64> {
    (1..100).map(|k| k as f64 / 100.0)
}

fn random_tuple(r: &mut ChaCha8Rng) -> [f64; 4] {
    [0; 4].map(|_| r.random_range(-2.0..2.0))
}

/// Worst residual over 100 well-conditioned random tuples of one family.
fn family(
    seed: u64,
    reference: impl Fn([f64; 4]) -> qcurve_core::Result<Coefficients>,
    hamiltonian: impl Fn([f64; 4]) -> HermitianOperator,
    state: StateVector,
) -> Result<f64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut used) = (0.0f64, 0);
    while used < 100 {
        let m = random_tuple(&mut r);
        let Ok(want) = reference(m) else { continue };
        let h = hamiltonian(m);
        if !well_conditioned(&h, &state)? {
            continue;
        }
        worst = worst.max(both_routes(&h, &state, want)?);
        used += 1;
    }
    Ok(worst)
}

fn random_problems(seed: u64, count: usize, dims: &[usize]) -> Vec<EvolutionProblem> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let d = dims[i % dims.len()];
            EvolutionProblem::new(random_hermitian(&mut r, d), random_state(&mut r, d)).expect("random draws are valid")
        })
        .collect()
}

pub fn registry() -> Vec<Case> {
    let sigma_z = || single_qubit([0.0, 0.0, 1.0], 0.0);
    vec![
        fixture_case("xz_zx_product", |_| Ok(Coefficients::new(1.0, 1.0))),
        fixture_case("sigma_z_equator", |_| Ok(Coefficients::new(0.0, 0.0))),
        fixture_case("sigma_z_tilted", |_| Ok(Coefficients::new(4.0, 0.0))),
        fixture_case("product_nonlocal", |p| product_nonlocal(ms(p))),
        fixture_case("bell_local", |p| bell_local(ms(p))),
        fixture_case("product_local", |p| product_local(ms(p))),
        fixture_case("bell_nonlocal", |p| bell_nonlocal(ms(p))),
        fixture_case("ghz_heisenberg", |p| {
            let [jx, jy, jz, h] = js(p);
            Ok(ghz_heisenberg(jx, jy, jz, h))
        }),
        fixture_case("w_heisenberg", |p| {
            let [jx, jy, jz, h] = js(p);
            w_heisenberg(jx, jy, jz, h)
        }),
        case("bloch_curvature_formula", 1e-9, move |_| {
            let mut worst = 0.0f64;
            for k in 1..40 {
                let a = BlochVector::from_angles(PI * k as f64 / 40.0, 0.3 * k as f64)?;
                let m = MagneticVector::new([0.4, -1.1, 0.7]);
                let want = Coefficients::new(curvature_bloch(&a, &m)?, torsion_bloch(&a, &m)?);
                worst = worst.max(both_routes(&m.hamiltonian(), &qcurve_core::models::bloch::bloch_to_state(&a), want)?);
            }
            Ok(worst)
        }),
        case("xi_curvature_grid", 1e-9, move |_| {
            let mut worst = 0.0f64;
            for xi in xi_grid() {
                let m = central_moments(&sigma_z(), &xi_family(xi, 0.0)?)?;
                let want = xi_curvature(xi)?;
                worst = worst.max((curvature_from_moments(&m)? - want).abs() / want.max(0.1));
            }
            Ok(worst)
        }),
        case("xi_kurtosis_grid", 1e-9, move |_| {
            let mut worst = 0.0f64;
            for xi in xi_grid() {
                let m = central_moments(&sigma_z(), &xi_family(xi, 0.0)?)?;
                let want = xi_kurtosis(xi)?;
                worst = worst.max((m.alpha4.unwrap_or(f64::NAN) - want).abs() / want);
            }
            Ok(worst)
        }),
        case("efficiency_balanced_state", 1e-9, move |_| {
            let p = EvolutionProblem::new(sigma_z(), xi_family(FRAC_1_SQRT_2, 0.0)?)?;
            Ok((geodesic_efficiency(&p, PI / 4.0)? - 1.0).abs())
        }),
        case("efficiency_grid", 1e-6, move |_| {
            let mut worst = 0.0f64;
            for xi in xi_grid() {
                let p = EvolutionProblem::new(sigma_z(), xi_family(xi, 0.0)?)?;
                worst = worst.max((geodesic_efficiency(&p, PI / 4.0)? - xi_efficiency_quarter(xi)?).abs());
            }
            Ok(worst)
        }),
        case("xzzx_evolved_state", 1e-10, |fx| {
            let p = xzzx_problem(fx)?;
            let mut worst = 0.0f64;
            for k in 0..20 {
                let t = 0.2 * k as f64;
                let expected = &xzzx_frame(2f64.sqrt() * t)[0];
                worst = worst.max(max_diff(p.evolve(t)?.amplitudes(), expected));
            }
            Ok(worst)
        }),
        case("xzzx_frame_vectors", 1e-10, |fx| {
            let p = xzzx_problem(fx)?;
            let mut worst = 0.0f64;
            for s in XZZX_S {
                let f = build_frame(&p, s, None)?;
                let n = f.binormal.ok_or_else(|| CliError::Degenerate("no binormal".into()))?;
                let [psi, t, nn] = xzzx_frame(s);
                worst = worst
                    .max(phase_free_diff(f.psi.amplitudes(), &psi))
                    .max(phase_free_diff(f.tangent.amplitudes(), &t))
                    .max(phase_free_diff(n.amplitudes(), &nn));
            }
            Ok(worst)
        }),
        case("xzzx_completion_vector", 1e-10, |fx| {
            let p = xzzx_problem(fx)?;
            let r = FRAC_1_SQRT_2;
            let v = CVector::from_vec(vec![c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)]);
            let mut worst = 0.0f64;
            for s in XZZX_S {
                let f = build_frame(&p, s, None)?;
                let extra = f.extra.first().ok_or_else(|| CliError::Degenerate("no completion vector".into()))?;
                worst = worst.max(phase_free_diff(extra.amplitudes(), &v));
            }
            Ok(worst)
        }),
        case("xzzx_cartan_matrix", 1e-8, |fx| {
            let p = xzzx_problem(fx)?;
            let expected = [[0.0, 1.0, 0.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 0.0]];
            let mut worst = 0.0f64;
            for s in XZZX_S {
                let m = build_frame(&p, s, None)?.cartan;
                for (i, row) in expected.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        worst = worst.max((m[(i, j)] - c(*e, 0.0)).norm());
                    }
                }
            }
            Ok(worst)
        }),
        case("product_nonlocal_random_tuples", 1e-9, |_| {
            family(SEED + 1, product_nonlocal, two_qubit_nonlocal, StateVector::from_bits("00")?)
        }),
        case("bell_local_random_tuples", 1e-9, |_| family(SEED + 2, bell_local, two_qubit_local, bell(BellState::PhiPlus))),
        case("product_local_random_tuples", 1e-9, |_| {
            family(SEED + 3, product_local, two_qubit_local, StateVector::from_bits("00")?)
        }),
        case("bell_nonlocal_random_tuples", 1e-9, |_| family(SEED + 4, bell_nonlocal, two_qubit_nonlocal, bell(BellState::PhiPlus))),
        case("ghz_heisenberg_random", 1e-9, |_| {
            family(SEED + 5, |[jx, jy, jz, h]| Ok(ghz_heisenberg(jx, jy, jz, h)), |[jx, jy, jz, h]| heisenberg3(jx, jy, jz, h), ghz())
        }),
        case("w_heisenberg_random", 1e-9, |_| {
            family(SEED + 6, |[jx, jy, jz, h]| w_heisenberg(jx, jy, jz, h), |[jx, jy, jz, h]| heisenberg3(jx, jy, jz, h), w())
        }),
        case("bell_states_torsion_free", 1e-10, |_| {
            let mut r = ChaCha8Rng::seed_from_u64(SEED + 7);
            let mut worst = 0.0f64;
            for kind in [BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus] {
                let psi = bell(kind);
                let mut used = 0;
                while used < 100 {
                    let h = two_qubit_nonlocal(random_tuple(&mut r));
                    if !well_conditioned(&h, &psi)? {
                        continue;
                    }
                    let m = central_moments(&h, &psi)?;
                    let frame = build_frame(&EvolutionProblem::new(h, psi.clone())?, 0.0, None)?;
                    worst = worst.max(torsion_from_moments(&m)?.abs()).max(frame.tau_sq);
                    used += 1;
                }
            }
            Ok(worst)
        }),
        case("random_route_agreement", 1e-9, |_| {
            let mut worst = 0.0f64;
            for p in random_problems(SEED + 8, 200, &[2, 3, 4, 8]) {
                let m = central_moments(p.hamiltonian(), p.initial_state())?;
                let want = Coefficients::new(curvature_from_moments(&m)?, torsion_from_moments(&m)?);
                let f = build_frame(&p, 0.0, None)?;
                worst = worst.max(coefficient_residual(Coefficients::new(f.kappa_sq, f.tau_sq), want));
            }
            Ok(worst)
        }),
        case("finite_difference_oracle", 0.02, |_| {
            let mut worst = 0.0f64;
            for p in random_problems(SEED + 9, 20, &[2, 4, 8]) {
                let m = central_moments(p.hamiltonian(), p.initial_state())?;
                let want = Coefficients::new(curvature_from_moments(&m)?, torsion_from_moments(&m)?);
                let grid = default_dt_grid(p.speed());
                let got = Coefficients::new(lt_curvature(&p, &grid, 2.0)?.normalized, lt_torsion(&p, &grid)?.normalized);
                worst = worst.max(coefficient_residual(got, want));
            }
            Ok(worst)
        }),
        case("qubit_oracle_torsion", 1e-10, |_| {
            let mut worst = 0.0f64;
            for p in random_problems(SEED + 10, 10, &[2]) {
                worst = worst.max(lt_torsion(&p, &default_dt_grid(p.speed()))?.coefficient.abs());
            }
            Ok(worst)
        }),
        case("classical_circles", 1e-6, |_| {
            let mut worst = 0.0f64;
            for radius in [0.5, 1.0, 2.0] {
                let s = SpaceCurveSamples::from_fn(|u| [radius * u.cos(), radius * u.sin(), 0.0], 0.0, 2.0, 201)?;
                let fs = classical_fs(&s)?;
                for (k, t) in fs.kappa.iter().zip(&fs.tau) {
                    worst = worst.max((k - 1.0 / radius).abs()).max(t.abs());
                }
            }
            Ok(worst)
        }),
        case("sphere_curvature_ratio", 1e-9, |_| {
            let mut worst = 0.0f64;
            for radius in [0.5, 1.0, 3.0] {
                for k in (1..20).filter(|k| *k != 10) {
                    let theta = PI * k as f64 / 20.0;
                    let geo = sphere_geodesic_curvature(theta, radius)?;
                    let ratio = xi_curvature((theta / 2.0).cos())? / (geo * geo);
                    worst = worst.max((ratio / (4.0 * radius * radius) - 1.0).abs());
                }
            }
            Ok(worst)
        }),
    ]
}

/// Runs every case in parallel; results keep registry order.
pub fn run(fixtures: &Fixtures) -> Vec<CaseResult> {
    registry()
        .par_iter()
        .map(|case| CaseResult {
            name: case.name.clone(),
            tolerance: case.tolerance,
            outcome: (case.check)(fixtures).map_err(|e| e.to_string()),
        })
        .collect()
}
