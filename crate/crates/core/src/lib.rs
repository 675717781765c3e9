//! Curvature, torsion and moving frames of curves traced in projective
//! Hilbert space by pure states under time-independent Hamiltonians.
//!
//! Three independent routes compute the same geometry:
//!
//! * [`moments`]: central moments of H in the initial state,
//! * [`frame`]: projector-based covariant derivatives along the trajectory,
//! * [`oracles`]: small-step finite-difference fits of Fubini–Study distances.
//!
//! [`models`] provides the Hamiltonian and state families with closed-form
//! reference values. Units use ħ = 1.

pub mod error;
pub mod evolution;
pub mod frame;
pub mod hilbert;
pub mod models;
pub mod moments;
pub mod oracles;
pub mod sampling;

pub use error::{Error, Result};
pub use evolution::{propagator, EvolutionProblem, FD_STEP, HBAR};
pub use frame::{
    binormal_raw, build_frame, cartan_matrix, curvature_geometric, torsion_geometric, QuantumFrame,
};
pub use hilbert::{
    build_operator, expectation, gram_schmidt, projector_orthogonal, CMatrix, CVector,
    HermitianOperator, PauliTerm, StateVector,
};
pub use moments::{central_moments, curvature_from_moments, pearson_gap, torsion_from_moments, MomentSet};
pub use num_complex::Complex64;
pub use oracles::classical::{classical_fs, sphere_geodesic_curvature, FsProfile, SpaceCurveSamples};
pub use oracles::lt::{fubini_study_sq, geodesic_interpolate, lt_curvature, lt_torsion, FitResult};
