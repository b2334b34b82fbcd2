use num_complex::Complex;

use super::kernel::{self, bit_mask};
use super::limits::qubits_for_dim;
use super::matrix::CMatrix;
use super::unitary::Unitary;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Pure multi-qubit state; amplitude index is the big-endian bit string of
/// the qubit labels (qubit 0 is the most significant bit).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Validates length and unit norm.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let num_qubits = qubits_for_dim(amps.len())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::arg(format!("{} amplitudes is not 2^n, n >= 1", amps.len())))?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::arg("non-finite amplitude"));
        }
        let s = Self { num_qubits, amps };
        let norm = s.norm_sqr().sqrt();
        if (norm - T::one()).abs() > T::algebraic_tol() {
            return Err(Error::arg(format!("state norm {norm} is not 1")));
        }
        Ok(s)
    }

    /// Real amplitudes, normalised on construction.
    pub fn from_real_unnormalized(amps: &[f64]) -> Result<Self> {
        let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::arg("cannot normalise a zero or non-finite vector"));
        }
        Self::from_amplitudes(
            amps.iter()
                .map(|&a| Complex::new(T::lit(a / norm), T::zero()))
                .collect(),
        )
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits >= usize::BITS as usize {
            return Err(Error::arg("qubit count out of range"));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::arg(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits, amps })
    }

    /// Basis state from per-qubit bits, qubit 0 first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut index = 0usize;
        for &b in bits {
            if b > 1 {
                return Err(Error::arg(format!("bit value {b} is not 0 or 1")));
            }
            index = (index << 1) | b as usize;
        }
        Self::basis(bits.len(), index)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::arg("inner product of states with different sizes"));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.dim() != other.dim() {
            return T::infinity();
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            amps,
        }
    }

    /// Column-vector view, for use with matrix operations.
    pub fn to_column(&self) -> CMatrix<T> {
        CMatrix::from_vec(self.dim(), 1, self.amps.clone()).expect("column shape")
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn to_density_matrix(&self) -> super::DensityMatrix<T> {
        super::DensityMatrix::from_matrix_unchecked(self.num_qubits, CMatrix::outer(&self.amps, &self.amps))
    }

    /// Applies `gate` to `targets` (in order), identity elsewhere.
    pub fn apply(&self, gate: &Unitary<T>, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_in_place(gate, targets)?;
        Ok(out)
    }

    pub fn apply_in_place(&mut self, gate: &Unitary<T>, targets: &[usize]) -> Result<()> {
        kernel::validate_targets(self.num_qubits, targets)?;
        if gate.dim() != 1 << targets.len() {
            return Err(Error::arg(format!(
                "gate of dimension {} cannot act on {} qubits",
                gate.dim(),
                targets.len()
            )));
        }
        kernel::apply_matrix(&mut self.amps, self.num_qubits, gate.matrix(), targets);
        Ok(())
    }

    /// Multi-controlled NOT without materialising the gate matrix.
    pub fn apply_mcx_in_place(&mut self, controls: &[usize], target: usize) -> Result<()> {
        let mut all = controls.to_vec();
        all.push(target);
        kernel::validate_targets(self.num_qubits, &all)?;
        kernel::apply_mcx(&mut self.amps, self.num_qubits, controls, target);
        Ok(())
    }

    /// Reorders qubits: output qubit `i` is input qubit `order[i]`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.num_qubits {
            return Err(Error::arg("permutation length differs from qubit count"));
        }
        kernel::validate_targets(self.num_qubits, order)?;
        let n = self.num_qubits;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); self.dim()];
        for (src, amp) in self.amps.iter().enumerate() {
            let mut dst = 0usize;
            for (i, &q) in order.iter().enumerate() {
                if src & bit_mask(n, q) != 0 {
                    dst |= bit_mask(n, i);
                }
            }
            amps[dst] = *amp;
        }
        Ok(Self { num_qubits: n, amps })
    }

    /// Probability that each qubit in `fixed` holds the paired bit value.
    pub fn prob_of_bits(&self, fixed: &[(usize, u8)]) -> Result<T> {
        let (mask, want) = self.fixed_mask(fixed)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, z)| z.norm_sqr())
            .sum())
    }

    /// Projects the `fixed` qubits onto the given bits and returns the
    /// normalised state of `keep` (in that order), with the projection
    /// probability. `fixed` and `keep` must together cover every qubit.
    pub fn condition_on(&self, fixed: &[(usize, u8)], keep: &[usize]) -> Result<(Self, T)> {
        kernel::validate_targets(self.num_qubits, keep)?;
        let (mask, want) = self.fixed_mask(fixed)?;
        let n = self.num_qubits;
        let keep_mask = keep.iter().fold(0, |acc, &q| acc | bit_mask(n, q));
        if keep_mask & mask != 0 || (keep_mask | mask).count_ones() as usize != n {
            return Err(Error::arg("fixed and kept qubits must partition the register"));
        }
        let k = keep.len();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << k];
        for (out, slot) in amps.iter_mut().enumerate() {
            let mut idx = want;
            for (j, &q) in keep.iter().enumerate() {
                if (out >> (k - 1 - j)) & 1 == 1 {
                    idx |= bit_mask(n, q);
                }
            }
            *slot = self.amps[idx];
        }
        let p: T = amps.iter().map(|z| z.norm_sqr()).sum();
        if p <= T::zero() {
            return Err(Error::Precondition("conditioning event has probability 0".into()));
        }
        let s = p.sqrt();
        for z in amps.iter_mut() {
            *z = *z / s;
        }
        Ok((Self { num_qubits: k, amps }, p))
    }

    /// Reduced density matrix of `keep` (output qubit order follows `keep`).
    pub fn reduced_density(&self, keep: &[usize]) -> Result<super::DensityMatrix<T>> {
        kernel::validate_targets(self.num_qubits, keep)?;
        let n = self.num_qubits;
        let k = keep.len();
        let keep_mask = keep.iter().fold(0, |acc, &q| acc | bit_mask(n, q));
        let traced: Vec<usize> = (0..n).filter(|q| keep_mask & bit_mask(n, *q) == 0).collect();
        let kd = 1usize << k;
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
        let keep_idx: Vec<usize> = (0..kd).map(|s| expand(s, keep)).collect();
        let traced_idx: Vec<usize> = (0..1usize << traced.len()).map(|s| expand(s, &traced)).collect();
        let mut m = CMatrix::zeros(kd, kd);
        for (r, &ri) in keep_idx.iter().enumerate() {
            for (c, &ci) in keep_idx.iter().enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for &t in &traced_idx {
                    acc += self.amps[ri | t] * self.amps[ci | t].conj();
                }
                m[(r, c)] = acc;
            }
        }
        Ok(super::DensityMatrix::from_matrix_unchecked(k, m))
    }

    fn fixed_mask(&self, fixed: &[(usize, u8)]) -> Result<(usize, usize)> {
        let qubits: Vec<usize> = fixed.iter().map(|&(q, _)| q).collect();
        if !qubits.is_empty() {
            kernel::validate_targets(self.num_qubits, &qubits)?;
        }
        let mut mask = 0usize;
        let mut want = 0usize;
        for &(q, b) in fixed {
            if b > 1 {
                return Err(Error::arg(format!("bit value {b} is not 0 or 1")));
            }
            let m = bit_mask(self.num_qubits, q);
            mask |= m;
            if b == 1 {
                want |= m;
            }
        }
        Ok((mask, want))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalised_amplitudes() {
        let z = Complex::new(1.0f64, 0.0);
        assert!(StateVector::from_amplitudes(vec![z, z]).is_err());
        assert!(StateVector::<f64>::from_amplitudes(vec![z; 3]).is_err());
    }

    #[test]
    fn from_bits_is_big_endian() {
        let s = StateVector::<f64>::from_bits(&[0, 1]).unwrap();
        assert_eq!(s.amplitude(1), Complex::new(1.0, 0.0));
        let s = StateVector::<f64>::from_bits(&[1, 1, 0]).unwrap();
        assert_eq!(s.amplitude(6), Complex::new(1.0, 0.0));
    }

    #[test]
    fn permute_swaps_qubits() {
        let s = StateVector::<f64>::from_bits(&[1, 0, 0]).unwrap();
        let p = s.permute_qubits(&[2, 1, 0]).unwrap();
        assert_eq!(p, StateVector::from_bits(&[0, 0, 1]).unwrap());
    }

    #[test]
    fn condition_on_extracts_factor() {
        let bell = StateVector::<f64>::from_real_unnormalized(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        let full = StateVector::from_bits(&[1]).unwrap().kron(&bell);
        let (kept, p) = full.condition_on(&[(0, 1)], &[1, 2]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(kept.approx_eq(&bell, 1e-12));
        assert!(full.condition_on(&[(0, 0)], &[1, 2]).is_err());
        assert!(full.condition_on(&[(0, 1)], &[1]).is_err());
    }
}
