//! Hamiltonian and state families with closed-form reference values.

pub mod bloch;
pub mod efficiency;
pub mod families;
pub mod reference;

pub use bloch::{
    bloch_to_state, curvature_bloch, state_to_bloch, third_moment_bloch, torsion_bloch, BlochVector,
    MagneticVector,
};
pub use efficiency::geodesic_efficiency;
pub use families::{
    bell, ghz, heisenberg3, heisenberg3_terms, single_qubit, two_qubit_local, two_qubit_local_terms,
    two_qubit_nonlocal, two_qubit_nonlocal_terms, w, xi_family, BellState,
};
pub use reference::Coefficients;
