//! Free-function forms of the core linear-algebra operations.

use super::limits::{qubits_for_dim, Limits};
use super::matrix::CMatrix;
use super::{DensityMatrix, StateVector, Unitary};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Operands accepted by [`tensor_product`].
pub trait TensorProduct: Sized {
    /// Dimensions (rows, cols) of the operand.
    fn shape(&self) -> (usize, usize);
    fn kron_unchecked(&self, other: &Self) -> Self;
}

impl<T: Real> TensorProduct for CMatrix<T> {
    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }
    fn kron_unchecked(&self, other: &Self) -> Self {
        self.kron(other)
    }
}

impl<T: Real> TensorProduct for StateVector<T> {
    fn shape(&self) -> (usize, usize) {
        (self.dim(), 1)
    }
    fn kron_unchecked(&self, other: &Self) -> Self {
        self.kron(other)
    }
}

impl<T: Real> TensorProduct for DensityMatrix<T> {
    fn shape(&self) -> (usize, usize) {
        (self.dim(), self.dim())
    }
    fn kron_unchecked(&self, other: &Self) -> Self {
        self.kron(other)
    }
}

/// Kronecker product with the left operand on the high-order bits, using
/// [`Limits::default`].
pub fn tensor_product<K: TensorProduct>(a: &K, b: &K) -> Result<K> {
    tensor_product_with(a, b, &Limits::default())
}

pub fn tensor_product_with<K: TensorProduct>(a: &K, b: &K, limits: &Limits) -> Result<K> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    for d in [ar, ac, br, bc] {
        if qubits_for_dim(d).is_none() {
            return Err(Error::arg(format!("dimension {d} is not a power of two")));
        }
    }
    limits.check_dim("tensor product axis", ar * br)?;
    limits.check_dim("tensor product axis", ac * bc)?;
    Ok(a.kron_unchecked(b))
}

pub fn apply_unitary<T: Real>(
    state: &StateVector<T>,
    gate: &Unitary<T>,
    targets: &[usize],
) -> Result<StateVector<T>> {
    state.apply(gate, targets)
}

pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    rho.partial_trace(keep)
}
