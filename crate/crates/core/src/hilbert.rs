//! Dense complex linear algebra on finite-dimensional Hilbert spaces.
//!
//! States are unit-norm amplitude vectors; operators are Hermitian matrices.
//! Pauli strings use the convention that the leftmost character acts on
//! qubit 1, the most significant bit of the basis index, so `"01"` is the
//! basis vector with index 1.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CVector = DVector<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

/// Tolerance on ‖ψ‖² − 1 accepted by [`StateVector::new`].
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Entrywise tolerance on M − M† accepted by [`HermitianOperator::new`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Residual norm below which Gram–Schmidt declares a vector dependent.
pub const INDEPENDENCE_THRESHOLD: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// ⟨a|b⟩, conjugate-linear in the first slot.
pub fn inner(a: &CVector, b: &CVector) -> Complex64 {
    a.dotc(b)
}

pub fn norm_sq(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Squared norm of the component of `v` orthogonal to the unit vector `unit`.
///
/// Equals ‖v‖² − |⟨unit|v⟩|² but is computed from the residual vector, so it
/// keeps full relative precision when the two terms nearly cancel.
pub fn orthogonal_residual_sq(unit: &CVector, v: &CVector) -> f64 {
    let overlap = inner(unit, v);
    norm_sq(&(v - unit * overlap))
}

/// A unit-norm pure state of dimension d ≥ 2.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: impl Into<CVector>) -> Result<Self> {
        let amplitudes = amplitudes.into();
        Self::check_dim(amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n2 = norm_sq(&amplitudes);
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: impl Into<CVector>) -> Result<Self> {
        let amplitudes = amplitudes.into();
        Self::check_dim(amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n = norm_sq(&amplitudes).sqrt();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self { amplitudes: amplitudes.unscale(n) })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(CVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    /// Computational basis vector |index⟩ in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        if index >= dim {
            return Err(Error::param("index", format!("{index} out of range for dimension {dim}")));
        }
        let mut amplitudes = CVector::zeros(dim);
        amplitudes[index] = ONE;
        Ok(Self { amplitudes })
    }

    /// Basis vector labelled by a bit string, e.g. `"01"` → |01⟩ in d = 4.
    pub fn from_bits(bits: &str) -> Result<Self> {
        if bits.is_empty() || bits.len() > 30 {
            return Err(Error::param("bits", format!("`{bits}` must have 1 to 30 characters")));
        }
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::param("bits", format!("`{bits}` is not a binary string")))?;
        Self::basis(1 << bits.len(), index)
    }

    /// Wraps a vector already known to be unit-norm to working precision.
    pub(crate) fn from_unit(amplitudes: CVector) -> Self {
        debug_assert!((norm_sq(&amplitudes) - 1.0).abs() < 1e-9);
        Self { amplitudes }
    }

    fn check_dim(dim: usize) -> Result<()> {
        if dim < 2 {
            Err(Error::DimensionTooSmall(dim))
        } else {
            Ok(())
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_inner(self) -> CVector {
        self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// e^{iχ}|ψ⟩.
    pub fn with_global_phase(&self, chi: f64) -> Self {
        Self { amplitudes: &self.amplitudes * Complex64::from_polar(1.0, chi) }
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amplitudes.iter()).finish()
    }
}

impl AsRef<CVector> for StateVector {
    fn as_ref(&self) -> &CVector {
        &self.amplitudes
    }
}

/// A d×d complex Hermitian matrix.
#[derive(Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    /// Rejects (never symmetrizes) input that is not Hermitian to
    /// [`HERMITIAN_TOLERANCE`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::DimensionTooSmall(0));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("operator entries"));
        }
        let mut worst = 0.0f64;
        for i in 0..rows {
            for j in i..cols {
                worst = worst.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
            }
        }
        if worst > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(worst));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_hermitian_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim, dim) }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = CVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self { matrix: CMatrix::from_diagonal(&d) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.matrix * v
    }

    /// M + c·I.
    pub fn shifted(&self, c: f64) -> Self {
        let mut matrix = self.matrix.clone();
        for i in 0..matrix.nrows() {
            matrix[(i, i)] += c;
        }
        Self { matrix }
    }

    /// λ·M.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self { matrix: &self.matrix * Complex64::new(lambda, 0.0) }
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(Self { matrix: &self.matrix + &other.matrix })
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// ‖M − tr(M)/d · I‖²_F, the shift-invariant energy scale of M.
    pub fn traceless_frobenius_sq(&self) -> f64 {
        let mean = self.trace() / self.dim() as f64;
        let d = self.dim();
        let mut total = 0.0;
        for i in 0..d {
            for j in 0..d {
                let z = self.matrix[(i, j)];
                total += if i == j { (z - mean).norm_sqr() } else { z.norm_sqr() };
            }
        }
        total
    }

    /// Largest |eigenvalue| of the traceless part.
    pub fn traceless_spectral_radius(&self) -> Result<f64> {
        let mean = self.trace() / self.dim() as f64;
        let spectrum = self.shifted(-mean).eigen()?;
        Ok(spectrum.values.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
    }

    /// Full eigendecomposition M = V diag(λ) V†.
    pub fn eigen(&self) -> Result<Spectrum> {
        let eig = nalgebra::linalg::SymmetricEigen::try_new(self.matrix.clone(), f64::EPSILON, 0)
            .ok_or(Error::EigenFailure)?;
        if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::EigenFailure);
        }
        Ok(Spectrum { values: eig.eigenvalues.iter().copied().collect(), vectors: eig.eigenvectors })
    }
}

impl fmt::Debug for HermitianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianOperator{}", self.matrix)
    }
}

/// Eigenvalues with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// A real coefficient times a tensor product of Pauli matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub word: String,
}

impl PauliTerm {
    pub fn new(coefficient: f64, word: impl Into<String>) -> Self {
        Self { coefficient, word: word.into() }
    }
}

/// Σ cᵢ · (⊗ Pauli word ᵢ) on `n_qubits` qubits.
pub fn build_operator(terms: &[PauliTerm], n_qubits: usize) -> Result<HermitianOperator> {
    if n_qubits == 0 || n_qubits > 16 {
        return Err(Error::param("n_qubits", format!("{n_qubits} not in 1..=16")));
    }
    let dim = 1usize << n_qubits;
    let mut matrix = CMatrix::zeros(dim, dim);
    for term in terms {
        if !term.coefficient.is_finite() {
            return Err(Error::NonFinite("Pauli coefficient"));
        }
        let len = term.word.chars().count();
        if len != n_qubits {
            return Err(Error::WordLength { word: term.word.clone(), expected: n_qubits, found: len });
        }
        // Column j maps to row j ^ flip with a phase from Y and Z factors.
        let mut flip = 0usize;
        let mut ys = 0usize;
        let mut zs = 0usize;
        for (q, ch) in term.word.chars().enumerate() {
            let bit = 1usize << (n_qubits - 1 - q);
            match ch {
                'I' => {}
                'X' => flip |= bit,
                'Y' => {
                    flip |= bit;
                    ys |= bit;
                }
                'Z' => zs |= bit,
                _ => return Err(Error::InvalidPauli { word: term.word.clone(), ch }),
            }
        }
        for col in 0..dim {
            // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩, Z|b⟩ = (−1)^b|b⟩.
            let y_ones = (col & ys).count_ones();
            let y_count = ys.count_ones();
            let mut phase = match y_count % 4 {
                0 => ONE,
                1 => I,
                2 => -ONE,
                _ => -I,
            };
            if y_ones % 2 == 1 {
                phase = -phase;
            }
            if (col & zs).count_ones() % 2 == 1 {
                phase = -phase;
            }
            matrix[(col ^ flip, col)] += phase * term.coefficient;
        }
    }
    Ok(HermitianOperator::from_hermitian_unchecked(matrix))
}

/// Re⟨ψ|M|ψ⟩, rejecting a non-negligible imaginary part.
pub fn expectation(op: &HermitianOperator, state: &StateVector) -> Result<f64> {
    if op.dim() != state.dim() {
        return Err(Error::DimensionMismatch { expected: op.dim(), found: state.dim() });
    }
    let value = inner(state.amplitudes(), &op.apply(state.amplitudes()));
    let scale = op.matrix().iter().fold(1.0f64, |acc, z| acc.max(z.norm()));
    if value.im.abs() > HERMITIAN_TOLERANCE * scale {
        return Err(Error::NonRealExpectation(value.im));
    }
    Ok(value.re)
}

/// I − |ψ⟩⟨ψ|.
pub fn projector_orthogonal(state: &StateVector) -> HermitianOperator {
    let a = state.amplitudes();
    let mut matrix = -(a * a.adjoint());
    for i in 0..matrix.nrows() {
        matrix[(i, i)] += 1.0;
    }
    HermitianOperator::from_hermitian_unchecked(matrix)
}

/// Classical Gram–Schmidt with one re-orthogonalization pass.
///
/// Fails on the first vector whose residual norm after projection drops
/// below [`INDEPENDENCE_THRESHOLD`].
pub fn gram_schmidt(vectors: &[CVector]) -> Result<Vec<CVector>> {
    let mut basis: Vec<CVector> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if let Some(first) = basis.first() {
            if first.len() != v.len() {
                return Err(Error::DimensionMismatch { expected: first.len(), found: v.len() });
            }
        }
        match orthonormalize_against(&basis, v) {
            Some(u) => basis.push(u),
            None => {
                let residual = residual_norm(&basis, v);
                return Err(Error::LinearlyDependent { index, residual });
            }
        }
    }
    Ok(basis)
}

fn residual_norm(basis: &[CVector], v: &CVector) -> f64 {
    let mut r = v.clone();
    for _ in 0..2 {
        for u in basis {
            let c = inner(u, &r);
            r -= u * c;
        }
    }
    norm_sq(&r).sqrt()
}

/// Unit vector along the part of `v` orthogonal to the orthonormal `basis`,
/// or `None` when that part is below [`INDEPENDENCE_THRESHOLD`].
pub(crate) fn orthonormalize_against(basis: &[CVector], v: &CVector) -> Option<CVector> {
    let mut r = v.clone();
    for _ in 0..2 {
        for u in basis {
            let c = inner(u, &r);
            r -= u * c;
        }
    }
    let n = norm_sq(&r).sqrt();
    if n < INDEPENDENCE_THRESHOLD {
        None
    } else {
        Some(r.unscale(n))
    }
}
