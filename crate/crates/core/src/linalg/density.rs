use num_complex::Complex;

use super::kernel::{self, bit_mask};
use super::limits::qubits_for_dim;
use super::matrix::CMatrix;
use super::unitary::Unitary;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mixed state: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    num_qubits: usize,
    m: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Checks Hermiticity and unit trace to the algebraic tolerance and
    /// positivity down to [`Real::psd_tol`].
    pub fn from_matrix(m: CMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::arg("density matrix must be square"));
        }
        let num_qubits = qubits_for_dim(m.rows())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::arg(format!("dimension {} is not 2^n, n >= 1", m.rows())))?;
        if !m.is_finite() {
            return Err(Error::arg("non-finite entry"));
        }
        let tol = T::algebraic_tol();
        if !m.is_hermitian(tol) {
            return Err(Error::arg("matrix is not Hermitian"));
        }
        let tr = m.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::arg(format!("trace {tr} is not 1")));
        }
        if !m.is_psd_with_shift(T::psd_tol()) {
            return Err(Error::arg("matrix has a negative eigenvalue"));
        }
        Ok(Self { num_qubits, m })
    }

    pub(crate) fn from_matrix_unchecked(num_qubits: usize, m: CMatrix<T>) -> Self {
        Self { num_qubits, m }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let d = 1usize << num_qubits;
        Self {
            num_qubits,
            m: CMatrix::identity(d).scale(T::one() / T::lit(d as f64)),
        }
    }

    /// Diagonal state from a probability distribution over basis strings.
    pub fn diagonal(probs: &[T]) -> Result<Self> {
        let mut m = CMatrix::zeros(probs.len(), probs.len());
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = Complex::new(p, T::zero());
        }
        Self::from_matrix(m)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.m
    }

    pub fn trace(&self) -> Complex<T> {
        self.m.trace()
    }

    pub fn is_psd(&self) -> bool {
        self.m.is_psd_with_shift(T::psd_tol())
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> T {
        self.m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn diagonal_probabilities(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.m[(i, i)].re).collect()
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.m.approx_eq(&other.m, tol)
    }

    /// `Tr[ρ O]`.
    pub fn expectation(&self, op: &CMatrix<T>) -> Result<Complex<T>> {
        if op.rows() != self.dim() || op.cols() != self.dim() {
            return Err(Error::arg("operator dimension differs from state"));
        }
        let d = self.dim();
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..d {
            for j in 0..d {
                acc += self.m[(i, j)] * op[(j, i)];
            }
        }
        Ok(acc)
    }

    /// `U ρ U†` with `gate` acting on `targets`.
    pub fn apply(&self, gate: &Unitary<T>, targets: &[usize]) -> Result<Self> {
        kernel::validate_targets(self.num_qubits, targets)?;
        if gate.dim() != 1 << targets.len() {
            return Err(Error::arg("gate dimension does not match target count"));
        }
        let mut m = self.m.clone();
        kernel::conjugate_by(&mut m, self.num_qubits, gate.matrix(), targets);
        Ok(Self {
            num_qubits: self.num_qubits,
            m,
        })
    }

    /// Convex mixture `w·self + (1-w)·other`.
    pub fn mix(&self, other: &Self, w: T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::arg("cannot mix states of different sizes"));
        }
        if !(w >= T::zero() && w <= T::one()) {
            return Err(Error::arg(format!("mixing weight {w} outside [0, 1]")));
        }
        let m = self.m.scale(w).add(&other.m.scale(T::one() - w))?;
        Ok(Self {
            num_qubits: self.num_qubits,
            m,
        })
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            m: self.m.kron(&other.m),
        }
    }

    /// Reduced state on `keep`; output qubit order follows `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::arg("partial trace must keep at least one qubit"));
        }
        kernel::validate_targets(self.num_qubits, keep)?;
        let n = self.num_qubits;
        let k = keep.len();
        let keep_mask = keep.iter().fold(0, |acc, &q| acc | bit_mask(n, q));
        let traced: Vec<usize> = (0..n).filter(|q| keep_mask & bit_mask(n, *q) == 0).collect();
        let expand = |sub: usize, qs: &[usize]| {
            let len = qs.len();
            qs.iter().enumerate().fold(0usize, |acc, (j, &q)| {
                if (sub >> (len - 1 - j)) & 1 == 1 {
                    acc | bit_mask(n, q)
                } else {
                    acc
                }
            })
        };
        let keep_idx: Vec<usize> = (0..1usize << k).map(|s| expand(s, keep)).collect();
        let traced_idx: Vec<usize> = (0..1usize << traced.len()).map(|s| expand(s, &traced)).collect();
        let mut out = CMatrix::zeros(1 << k, 1 << k);
        for (r, &ri) in keep_idx.iter().enumerate() {
            for (c, &ci) in keep_idx.iter().enumerate() {
                out[(r, c)] = traced_idx.iter().map(|&t| self.m[(ri | t, ci | t)]).sum();
            }
        }
        Ok(Self {
            num_qubits: k,
            m: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_matrices() {
        let not_unit = CMatrix::<f64>::identity(2);
        assert!(DensityMatrix::from_matrix(not_unit).is_err());
        let negative = CMatrix::<f64>::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]).unwrap();
        assert!(DensityMatrix::from_matrix(negative).is_err());
        let non_hermitian = CMatrix::<f64>::from_real_rows(&[&[0.5, 0.3], &[0.0, 0.5]]).unwrap();
        assert!(DensityMatrix::from_matrix(non_hermitian).is_err());
    }

    #[test]
    fn partial_trace_rejects_empty_keep() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        assert!(matches!(rho.partial_trace(&[]), Err(Error::Argument(_))));
        assert!(rho.partial_trace(&[2]).is_err());
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho = super::super::StateVector::<f64>::from_bits(&[0, 0])
            .unwrap()
            .to_density_matrix();
        let reduced = rho.partial_trace(&[0]).unwrap();
        let expected = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(reduced.matrix().approx_eq(&expected, 1e-12));
    }
}
