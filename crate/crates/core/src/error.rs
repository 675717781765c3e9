use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M^H| = {0:e}")]
    NotHermitian(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("Pauli word `{word}` has length {found}, expected {expected}")]
    WordLength { word: String, expected: usize, found: usize },

    #[error("invalid character `{ch}` in Pauli word `{word}`")]
    InvalidPauli { word: String, ch: char },

    #[error("vector {index} is linearly dependent on its predecessors (residual norm {residual:e})")]
    LinearlyDependent { index: usize, residual: f64 },

    #[error("frame completion failed: seeds span only {found} of {needed} missing directions")]
    CompletionFailed { needed: usize, found: usize },

    #[error("expectation value has imaginary residual {0:e}")]
    NonRealExpectation(f64),

    #[error("eigendecomposition did not converge")]
    EigenFailure,

    #[error("stationary state: arc length undefined (speed {speed:e})")]
    StationaryState { speed: f64 },

    #[error("orthogonal endpoints: geodesic phase undefined (overlap {0:e})")]
    OrthogonalEndpoints(f64),

    #[error("Δt⁴ fit residual {residual:.3e} exceeds {limit}")]
    PoorFit { residual: f64, limit: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("too few samples: need at least {needed}, got {found}")]
    TooFewSamples { needed: usize, found: usize },

    #[error("degenerate curve at sample {index}: |r' x r''| = {cross:e}")]
    DegenerateCurve { index: usize, cross: f64 },

    #[error("{0}: degenerate denominator")]
    DegenerateFormula(&'static str),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
