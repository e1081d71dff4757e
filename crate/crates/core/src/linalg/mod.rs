//! Dense complex linear algebra for one to three qubits.

mod eig;
mod matrix;
mod state;

pub use eig::{herm_eig, trace_norm, HermitianEigen};
pub use matrix::{pauli, tensor, ComplexMatrix, SUPPORTED_DIMS};
pub use state::{
    partial_trace, partial_transpose, psi_plus, Bipartition, DensityMatrix, PureState, Side,
    PSD_TOL,
};

