use num_complex::Complex;

use super::limits::{qubits_for_dim, Limits};
use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square matrix with `U†U = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary<T> {
    m: CMatrix<T>,
}

impl<T: Real> Unitary<T> {
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        if !m.is_square() || qubits_for_dim(m.rows()).is_none() {
            return Err(Error::arg(format!(
                "unitary must be square with power-of-two dimension, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let gram = m.adjoint().matmul(&m)?;
        if !gram.approx_eq(&CMatrix::identity(m.rows()), T::algebraic_tol()) {
            return Err(Error::arg("matrix is not unitary"));
        }
        Ok(Self { m })
    }

    pub(crate) fn from_trusted(m: CMatrix<T>) -> Self {
        debug_assert!(m.is_square());
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn num_qubits(&self) -> usize {
        qubits_for_dim(self.dim()).unwrap_or(0)
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.m
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self::from_trusted(CMatrix::identity(1 << num_qubits))
    }

    pub fn hadamard() -> Self {
        let h = T::FRAC_1_SQRT_2();
        let c = |v: T| Complex::new(v, T::zero());
        Self::from_trusted(CMatrix::from_vec(2, 2, vec![c(h), c(h), c(h), c(-h)]).expect("2x2"))
    }

    pub fn pauli_x() -> Self {
        Self::from_trusted(CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2"))
    }

    pub fn pauli_y() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        Self::from_trusted(CMatrix::from_vec(2, 2, vec![z, -i, i, z]).expect("2x2"))
    }

    pub fn pauli_z() -> Self {
        Self::from_trusted(CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).expect("2x2"))
    }

    /// Control on the first qubit, target on the second.
    pub fn cnot() -> Self {
        Self::mcx(1)
    }

    /// Controls on the first two qubits, target on the third.
    pub fn toffoli() -> Self {
        Self::mcx(2)
    }

    /// NOT on the last qubit controlled on all `controls` preceding ones.
    pub fn mcx(controls: usize) -> Self {
        let d = 1usize << (controls + 1);
        let mut m = CMatrix::identity(d);
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        m[(d - 2, d - 2)] = zero;
        m[(d - 1, d - 1)] = zero;
        m[(d - 2, d - 1)] = one;
        m[(d - 1, d - 2)] = one;
        Self::from_trusted(m)
    }

    /// `self ⊗ other`, subject to the dimension cap.
    pub fn kron(&self, other: &Self, limits: &Limits) -> Result<Self> {
        limits.check_dim("unitary dimension", self.dim() * other.dim())?;
        Ok(Self::from_trusted(self.m.kron(&other.m)))
    }
}
