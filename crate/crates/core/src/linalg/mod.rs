//! Dense complex linear algebra for small multi-qubit registers.
//!
//! Qubit 0 is always the most significant bit of an amplitude index.

mod density;
pub(crate) mod kernel;
mod limits;
mod matrix;
mod ops;
mod state;
mod unitary;

pub use density::DensityMatrix;
pub use limits::{Limits, DEFAULT_MAX_QUBITS, MAX_QUBITS_ENV};
pub use matrix::{CMatrix, Cplx};
pub use ops::{apply_unitary, partial_trace, tensor_product, tensor_product_with, TensorProduct};
pub use state::StateVector;
pub use unitary::Unitary;
