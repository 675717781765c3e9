//! Problem specification documents: a Hamiltonian, an initial state and
//! numerical options, with every complex number written as `[re, im]`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use qcurve_core::models::bloch::{bloch_to_state, BlochVector};
use qcurve_core::models::families::{bell, ghz, w, xi_family, BellState};
use qcurve_core::{build_operator, CMatrix, CVector, Complex64, HermitianOperator, PauliTerm, StateVector};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const DEFAULT_S_SAMPLES: usize = 10;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub hamiltonian: HamiltonianSpec,
    pub state: StateSpec,
    /// Named values referenced by `param` in Pauli terms.
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub pauli_terms: Option<Vec<TermSpec>>,
    pub dense: Option<DenseSpec>,
}

/// A Pauli term; with `param` set its coefficient is `coeff · parameters[param]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: f64,
    pub word: String,
    #[serde(default)]
    pub param: Option<String>,
}

/// Row-major matrix, either nested by row or flat.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DenseSpec {
    Rows(Vec<Vec<[f64; 2]>>),
    Flat(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub amplitudes: Option<Vec<[f64; 2]>>,
    pub named: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    pub gamma: Option<f64>,
    /// Time steps for the finite-difference oracle; default {1, 2, 4}·10⁻³/v.
    pub dt_grid: Option<Vec<f64>>,
    pub s_samples: Option<usize>,
    /// Time at which sweeps evaluate the geodesic efficiency; default π/(4ρ)
    /// with ρ the spectral radius of the traceless Hamiltonian.
    pub eta_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NamedState {
    Bloch { theta: f64, phi: f64 },
    Xi { xi: f64, phi: f64 },
    Bell(BellState),
    Ghz,
    W,
    Basis(String),
}

#[derive(Debug, Clone, PartialEq)]
enum HamiltonianForm {
    Terms { terms: Vec<TermSpec>, qubits: usize },
    Dense(CMatrix),
}

#[derive(Debug, Clone, PartialEq)]
enum StateForm {
    Amplitudes(CVector),
    Named(NamedState),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub gamma: f64,
    pub dt_grid: Option<Vec<f64>>,
    pub s_samples: usize,
    pub eta_time: Option<f64>,
}

/// A schema-checked spec whose parameters can still be varied.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    hamiltonian: HamiltonianForm,
    state: StateForm,
    parameters: BTreeMap<String, f64>,
    pub options: Options,
}

/// A concrete Hamiltonian and normalized initial state.
#[derive(Debug, Clone)]
pub struct Instance {
    pub hamiltonian: HermitianOperator,
    pub state: StateVector,
}

impl PartialEq for TermSpec {
    fn eq(&self, other: &Self) -> bool {
        self.coeff.to_bits() == other.coeff.to_bits() && self.word == other.word && self.param == other.param
    }
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn finite(pointer: &str, values: impl IntoIterator<Item = f64>) -> Result<()> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(CliError::schema(pointer, "non-finite number"))
    }
}

/// Parses a real number or a multiple of π such as `pi/2`, `-π/4`, `3pi/4`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let t = text.trim().replace('π', "pi");
    let Some((coef, rest)) = t.split_once("pi") else {
        return t.parse().ok().filter(|x: &f64| x.is_finite());
    };
    let coef = match coef.trim().trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().ok()?,
    };
    let rest = rest.trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/')?.trim().parse::<f64>().ok().filter(|d| *d != 0.0)?
    };
    Some(coef * PI / den)
}

fn parse_pair(body: &str, pointer: &str, what: &str) -> Result<(f64, f64)> {
    let mut it = body.split(',');
    let bad = || CliError::schema(pointer, format!("cannot parse `{body}` as {what}"));
    let first = it.next().and_then(parse_angle).ok_or_else(bad)?;
    let second = match it.next() {
        Some(p) => parse_angle(p).ok_or_else(bad)?,
        None => 0.0,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((first, second))
}

impl NamedState {
    pub fn parse(text: &str) -> Result<Self> {
        const PTR: &str = "/state/named";
        let t = text.trim();
        if let Some((kind, body)) = t.split_once(':') {
            return match kind.trim().to_lowercase().as_str() {
                "bloch" => {
                    let (theta, phi) = parse_pair(body, PTR, "θ,φ")?;
                    Ok(Self::Bloch { theta, phi })
                }
                "xi" | "ξ" => {
                    let (xi, phi) = parse_pair(body, PTR, "ξ,φ")?;
                    Ok(Self::Xi { xi, phi })
                }
                "bell" => body.parse().map(Self::Bell).map_err(|e| CliError::schema(PTR, e)),
                other => Err(CliError::schema(PTR, format!("unknown state family `{other}`"))),
            };
        }
        match t.to_lowercase().as_str() {
            "ghz" => Ok(Self::Ghz),
            "w" => Ok(Self::W),
            bits if !bits.is_empty() && bits.chars().all(|c| c == '0' || c == '1') => Ok(Self::Basis(bits.into())),
            _ => Err(CliError::schema(PTR, format!("unknown named state `{t}`"))),
        }
    }

    fn build(&self) -> Result<StateVector> {
        const PTR: &str = "/state/named";
        Ok(match self {
            Self::Bloch { theta, phi } => {
                bloch_to_state(&BlochVector::from_angles(*theta, *phi).map_err(|e| CliError::schema(PTR, e))?)
            }
            Self::Xi { xi, phi } => xi_family(*xi, *phi).map_err(|e| CliError::schema(PTR, e))?,
            Self::Bell(kind) => bell(*kind),
            Self::Ghz => ghz(),
            Self::W => w(),
            Self::Basis(bits) => StateVector::from_bits(bits).map_err(|e| CliError::schema(PTR, e))?,
        })
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::schema("/", e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// Checks that exactly one form is given for the Hamiltonian and the
    /// state and that all numbers and options are admissible.
    pub fn validate(&self) -> Result<Problem> {
        let hamiltonian = match (&self.hamiltonian.pauli_terms, &self.hamiltonian.dense) {
            (Some(_), Some(_)) => {
                return Err(CliError::schema("/hamiltonian", "give either `pauli_terms` or `dense`, not both"))
            }
            (None, None) => return Err(CliError::schema("/hamiltonian", "missing `pauli_terms` or `dense`")),
            (Some(terms), None) => self.validate_terms(terms)?,
            (None, Some(dense)) => HamiltonianForm::Dense(validate_dense(dense)?),
        };
        let state = match (&self.state.amplitudes, &self.state.named) {
            (Some(_), Some(_)) => return Err(CliError::schema("/state", "give either `amplitudes` or `named`, not both")),
            (None, None) => return Err(CliError::schema("/state", "missing `amplitudes` or `named`")),
            (Some(amps), None) => {
                finite("/state/amplitudes", amps.iter().flatten().copied())?;
                StateForm::Amplitudes(CVector::from_iterator(amps.len(), amps.iter().copied().map(complex)))
            }
            (None, Some(name)) => StateForm::Named(NamedState::parse(name)?),
        };
        for (name, value) in &self.parameters {
            finite(&format!("/parameters/{name}"), [*value])?;
        }
        let problem = Problem {
            hamiltonian,
            state,
            parameters: self.parameters.clone(),
            options: validate_options(&self.options)?,
        };
        problem.instance()?;
        Ok(problem)
    }

    fn validate_terms(&self, terms: &[TermSpec]) -> Result<HamiltonianForm> {
        if terms.is_empty() {
            return Err(CliError::schema("/hamiltonian/pauli_terms", "at least one term is required"));
        }
        let qubits = terms[0].word.chars().count();
        for (i, t) in terms.iter().enumerate() {
            let ptr = format!("/hamiltonian/pauli_terms/{i}");
            finite(&format!("{ptr}/coeff"), [t.coeff])?;
            let n = t.word.chars().count();
            if n != qubits || n == 0 {
                return Err(CliError::schema(
                    format!("{ptr}/word"),
                    format!("word `{}` has length {n}, expected {qubits}", t.word),
                ));
            }
            if let Some(bad) = t.word.chars().find(|c| !matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
                return Err(CliError::schema(format!("{ptr}/word"), format!("invalid Pauli letter `{bad}`")));
            }
            if let Some(p) = &t.param {
                if !self.parameters.contains_key(p) {
                    return Err(CliError::schema(format!("{ptr}/param"), format!("undefined parameter `{p}`")));
                }
            }
        }
        Ok(HamiltonianForm::Terms { terms: terms.to_vec(), qubits })
    }
}

fn validate_dense(dense: &DenseSpec) -> Result<CMatrix> {
    const PTR: &str = "/hamiltonian/dense";
    let (rows, entries): (usize, Vec<[f64; 2]>) = match dense {
        DenseSpec::Rows(rows) => {
            let n = rows.len();
            if let Some(i) = rows.iter().position(|r| r.len() != n) {
                return Err(CliError::schema(format!("{PTR}/{i}"), format!("row has {} entries, expected {n}", rows[i].len())));
            }
            (n, rows.iter().flatten().copied().collect())
        }
        DenseSpec::Flat(flat) => {
            let n = (flat.len() as f64).sqrt().round() as usize;
            if n * n != flat.len() {
                return Err(CliError::schema(PTR, format!("{} entries do not form a square matrix", flat.len())));
            }
            (n, flat.clone())
        }
    };
    if rows == 0 {
        return Err(CliError::schema(PTR, "empty matrix"));
    }
    finite(PTR, entries.iter().flatten().copied())?;
    Ok(CMatrix::from_row_iterator(rows, rows, entries.into_iter().map(complex)))
}

fn validate_options(o: &OptionsSpec) -> Result<Options> {
    let gamma = o.gamma.unwrap_or(qcurve_core::oracles::lt::DEFAULT_GAMMA);
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(CliError::schema("/options/gamma", "must be positive"));
    }
    if let Some(grid) = &o.dt_grid {
        if grid.is_empty() || grid.iter().any(|dt| !(dt.is_finite() && *dt > 0.0)) {
            return Err(CliError::schema("/options/dt_grid", "entries must be positive and finite"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::schema("/options/dt_grid", "entries must be strictly increasing"));
        }
    }
    let s_samples = o.s_samples.unwrap_or(DEFAULT_S_SAMPLES);
    if s_samples == 0 {
        return Err(CliError::schema("/options/s_samples", "must be at least 1"));
    }
    if let Some(t) = o.eta_time {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::schema("/options/eta_time", "must be positive"));
        }
    }
    Ok(Options { gamma, dt_grid: o.dt_grid.clone(), s_samples, eta_time: o.eta_time })
}

impl Problem {
    pub fn load(path: &Path) -> Result<Self> {
        ProblemSpec::load(path)?.validate()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        ProblemSpec::from_json(text)?.validate()
    }

    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters.get(name).copied()
    }

    /// Names accepted by [`Problem::with_parameter`].
    pub fn parameter_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.parameters.keys().cloned().collect();
        match &self.state {
            StateForm::Named(NamedState::Bloch { .. }) => names.extend(["theta".into(), "phi".into()]),
            StateForm::Named(NamedState::Xi { .. }) => names.extend(["xi".into(), "phi".into()]),
            _ => {}
        }
        names
    }

    /// Copy with one parameter replaced: a key of `parameters`, or `theta`,
    /// `xi`, `phi` of a Bloch or ξ-family state.
    pub fn with_parameter(&self, name: &str, value: f64) -> Result<Self> {
        let mut out = self.clone();
        if let Some(slot) = out.parameters.get_mut(name) {
            *slot = value;
            return Ok(out);
        }
        let slot = match (&mut out.state, name) {
            (StateForm::Named(NamedState::Bloch { theta, .. }), "theta" | "θ") => theta,
            (StateForm::Named(NamedState::Xi { xi, .. }), "xi" | "ξ") => xi,
            (StateForm::Named(NamedState::Bloch { phi, .. } | NamedState::Xi { phi, .. }), "phi" | "φ") => phi,
            _ => {
                return Err(CliError::schema(
                    "--param",
                    format!("unknown parameter `{name}`; available: {}", self.parameter_names().join(", ")),
                ))
            }
        };
        *slot = value;
        Ok(out)
    }

    /// Copy whose state has `delta` added to the real part of amplitude
    /// `index`; the state is renormalized when built.
    pub fn with_perturbed_amplitude(&self, index: usize, delta: f64) -> Result<Self> {
        let mut amps = self.instance()?.state.into_inner();
        if index >= amps.len() {
            return Err(CliError::schema("/state", format!("no amplitude {index} in dimension {}", amps.len())));
        }
        amps[index] += Complex64::new(delta, 0.0);
        let mut out = self.clone();
        out.state = StateForm::Amplitudes(amps);
        Ok(out)
    }

    pub fn instance(&self) -> Result<Instance> {
        let hamiltonian = match &self.hamiltonian {
            HamiltonianForm::Terms { terms, qubits } => {
                let scaled: Vec<PauliTerm> = terms
                    .iter()
                    .map(|t| {
                        let factor = t.param.as_ref().map_or(1.0, |p| self.parameters[p]);
                        PauliTerm::new(t.coeff * factor, t.word.clone())
                    })
                    .collect();
                build_operator(&scaled, *qubits).map_err(|e| CliError::schema("/hamiltonian/pauli_terms", e))?
            }
            HamiltonianForm::Dense(m) => {
                HermitianOperator::new(m.clone()).map_err(|e| CliError::schema("/hamiltonian/dense", e))?
            }
        };
        let state = match &self.state {
            StateForm::Amplitudes(a) => {
                StateVector::normalized(a.clone()).map_err(|e| CliError::schema("/state/amplitudes", e))?
            }
            StateForm::Named(n) => n.build()?,
        };
        if state.dim() != hamiltonian.dim() {
            return Err(CliError::schema(
                "/state",
                format!("state dimension {} does not match Hamiltonian dimension {}", state.dim(), hamiltonian.dim()),
            ));
        }
        Ok(Instance { hamiltonian, state })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointer(r: Result<Problem>) -> String {
        match r {
            Err(CliError::Schema { pointer, .. }) => pointer,
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.25"), Some(0.25));
        assert_eq!(parse_angle("pi"), Some(PI));
        assert_eq!(parse_angle("π/2"), Some(PI / 2.0));
        assert_eq!(parse_angle("-pi/4"), Some(-PI / 4.0));
        assert_eq!(parse_angle("3pi/4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("2*pi"), Some(2.0 * PI));
        assert_eq!(parse_angle("pi/0"), None);
        assert_eq!(parse_angle("x"), None);
    }

    #[test]
    fn named_states() {
        assert_eq!(NamedState::parse("bloch:π/2,0").unwrap(), NamedState::Bloch { theta: PI / 2.0, phi: 0.0 });
        assert_eq!(NamedState::parse("xi:0.3").unwrap(), NamedState::Xi { xi: 0.3, phi: 0.0 });
        assert_eq!(NamedState::parse("bell:Ψ−").unwrap(), NamedState::Bell(BellState::PsiMinus));
        assert_eq!(NamedState::parse("GHZ").unwrap(), NamedState::Ghz);
        assert_eq!(NamedState::parse("0110").unwrap(), NamedState::Basis("0110".into()));
        assert!(NamedState::parse("bloch:1,2,3").is_err());
        assert!(NamedState::parse("qutrit").is_err());
    }

    #[test]
    fn accepts_both_dense_layouts() {
        let rows = r#"{"hamiltonian": {"dense": [[[1,0],[0,0]],[[0,0],[-1,0]]]}, "state": {"named": "bloch:pi/2,0"}}"#;
        let flat = r#"{"hamiltonian": {"dense": [[1,0],[0,0],[0,0],[-1,0]]}, "state": {"named": "bloch:pi/2,0"}}"#;
        let a = Problem::from_json(rows).unwrap().instance().unwrap();
        let b = Problem::from_json(flat).unwrap().instance().unwrap();
        assert_eq!(a.hamiltonian, b.hamiltonian);
    }

    #[test]
    fn rejects_ambiguous_and_inconsistent_specs() {
        let both = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}], "dense": [[1,0]]}, "state": {"named": "0"}}"#;
        assert_eq!(pointer(Problem::from_json(both)), "/hamiltonian");
        let dims = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "ZZ"}]}, "state": {"named": "0"}}"#;
        assert_eq!(pointer(Problem::from_json(dims)), "/state");
        let word = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "ZZ"}, {"coeff": 1, "word": "Z"}]}, "state": {"named": "00"}}"#;
        assert_eq!(pointer(Problem::from_json(word)), "/hamiltonian/pauli_terms/1/word");
        let param = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z", "param": "h"}]}, "state": {"named": "0"}}"#;
        assert_eq!(pointer(Problem::from_json(param)), "/hamiltonian/pauli_terms/0/param");
        let gamma = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "0"}, "options": {"gamma": -1}}"#;
        assert_eq!(pointer(Problem::from_json(gamma)), "/options/gamma");
        let herm = r#"{"hamiltonian": {"dense": [[0,0],[1,0],[0,0],[0,0]]}, "state": {"named": "0"}}"#;
        assert_eq!(pointer(Problem::from_json(herm)), "/hamiltonian/dense");
        assert_eq!(pointer(Problem::from_json("{")), "/");
        let unknown = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"named": "0"}, "extra": 1}"#;
        assert_eq!(pointer(Problem::from_json(unknown)), "/");
    }

    #[test]
    fn parameters_scale_terms_and_can_be_swept() {
        let text = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 2, "word": "Z", "param": "h"}, {"coeff": 1, "word": "X"}]},
                       "state": {"named": "xi:0.5,0"}, "parameters": {"h": 0.25}}"#;
        let p = Problem::from_json(text).unwrap();
        let m = p.instance().unwrap().hamiltonian;
        assert_eq!(m.matrix()[(0, 0)].re, 0.5);
        let q = p.with_parameter("h", 1.0).unwrap();
        assert_eq!(q.instance().unwrap().hamiltonian.matrix()[(0, 0)].re, 2.0);
        let r = p.with_parameter("xi", 1.0).unwrap();
        assert_eq!(r.instance().unwrap().state, StateVector::basis(2, 0).unwrap());
        assert!(p.with_parameter("theta", 1.0).is_err());
        assert_eq!(p.parameter_names(), vec!["h", "xi", "phi"]);
    }

    #[test]
    fn amplitudes_are_normalized() {
        let text = r#"{"hamiltonian": {"pauli_terms": [{"coeff": 1, "word": "Z"}]}, "state": {"amplitudes": [[3,0],[0,4]]}}"#;
        let s = Problem::from_json(text).unwrap().instance().unwrap().state;
        assert!((s.amplitudes()[0].re - 0.6).abs() < 1e-15);
        assert!((s.amplitudes()[1].im - 0.8).abs() < 1e-15);
    }
}
