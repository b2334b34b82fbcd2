use crate::error::{Error, Result};
use crate::linalg::kernel::{self, bit_mask};
use crate::linalg::DensityMatrix;
use crate::scalar::Real;

/// Probability distribution over `num_bits`-bit strings, big-endian like
/// [`crate::linalg::StateVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalState<T> {
    num_bits: usize,
    probs: Vec<T>,
}

impl<T: Real> ClassicalState<T> {
    pub fn from_probabilities(probs: Vec<T>) -> Result<Self> {
        let len = probs.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::arg(format!("{len} probabilities is not 2^n, n >= 1")));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < T::zero()) {
            return Err(Error::arg("probabilities must be finite and nonnegative"));
        }
        let total: T = probs.iter().copied().sum();
        if (total - T::one()).abs() > T::algebraic_tol() {
            return Err(Error::arg(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self {
            num_bits: len.trailing_zeros() as usize,
            probs,
        })
    }

    /// Point mass on a bit string, bit 0 first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() || bits.iter().any(|&b| b > 1) {
            return Err(Error::arg("bits must be a nonempty 0/1 string"));
        }
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let mut probs = vec![T::zero(); 1 << bits.len()];
        probs[idx] = T::one();
        Ok(Self {
            num_bits: bits.len(),
            probs,
        })
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probs
    }

    pub fn probability(&self, index: usize) -> T {
        self.probs[index]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.probs.len() != other.probs.len() {
            return T::infinity();
        }
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// Diagonal density matrix with the same statistics.
    pub fn to_density_matrix(&self) -> DensityMatrix<T> {
        DensityMatrix::diagonal(&self.probs).expect("classical state is a valid diagonal state")
    }

    /// Applies a column-stochastic matrix to `targets`.
    pub fn apply(&self, gate: &StochasticMatrix<T>, targets: &[usize]) -> Result<Self> {
        kernel::validate_targets(self.num_bits, targets)?;
        if gate.dim != 1 << targets.len() {
            return Err(Error::arg("stochastic gate dimension does not match target count"));
        }
        let n = self.num_bits;
        let k = targets.len();
        let masks: Vec<usize> = targets.iter().map(|&q| bit_mask(n, q)).collect();
        let target_mask = masks.iter().fold(0, |a, m| a | m);
        let mut out = vec![T::zero(); self.probs.len()];
        let mut idx = vec![0usize; gate.dim];
        for base in (0..self.probs.len()).filter(|b| b & target_mask == 0) {
            for (s, slot) in idx.iter_mut().enumerate() {
                *slot = masks
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| (s >> (k - 1 - j)) & 1 == 1)
                    .fold(base, |acc, (_, m)| acc | m);
            }
            for (r, &ri) in idx.iter().enumerate() {
                out[ri] = idx
                    .iter()
                    .enumerate()
                    .map(|(c, &ci)| gate.entry(r, c) * self.probs[ci])
                    .sum();
            }
        }
        Ok(Self {
            num_bits: n,
            probs: out,
        })
    }

    /// Deterministic multi-controlled bit flip.
    pub fn apply_mcx(&self, controls: &[usize], target: usize) -> Result<Self> {
        let mut all = controls.to_vec();
        all.push(target);
        kernel::validate_targets(self.num_bits, &all)?;
        let mut probs = self.probs.clone();
        kernel::apply_mcx(&mut probs, self.num_bits, controls, target);
        Ok(Self {
            num_bits: self.num_bits,
            probs,
        })
    }

    /// Probability that every listed bit takes the paired value.
    pub fn prob_of_bits(&self, fixed: &[(usize, u8)]) -> T {
        let (mask, want) = fixed.iter().fold((0, 0), |(m, w), &(q, b)| {
            let bit = bit_mask(self.num_bits, q);
            (m | bit, if b == 1 { w | bit } else { w })
        });
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, p)| *p)
            .sum()
    }

    /// Marginal over `keep`, in the order given.
    pub fn marginal(&self, keep: &[usize]) -> Result<Self> {
        kernel::validate_targets(self.num_bits, keep)?;
        let n = self.num_bits;
        let k = keep.len();
        let mut probs = vec![T::zero(); 1 << k];
        for (i, &p) in self.probs.iter().enumerate() {
            let sub = keep
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | usize::from(i & bit_mask(n, q) != 0));
            probs[sub] += p;
        }
        Ok(Self {
            num_bits: keep.len(),
            probs,
        })
    }
}

/// Column-stochastic matrix: nonnegative entries, each column sums to one.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Real> StochasticMatrix<T> {
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != dim * dim || !dim.is_power_of_two() {
            return Err(Error::arg("stochastic matrix must be square with power-of-two size"));
        }
        if entries.iter().any(|e| *e < T::zero() || !e.is_finite()) {
            return Err(Error::arg("stochastic matrix entries must be nonnegative"));
        }
        for c in 0..dim {
            let col: T = (0..dim).map(|r| entries[r * dim + c]).sum();
            if (col - T::one()).abs() > T::algebraic_tol() {
                return Err(Error::arg(format!("column {c} sums to {col}")));
            }
        }
        Ok(Self { dim, entries })
    }

    /// The randomizing gate: maps either bit value to a fair coin.
    pub fn randomizer() -> Self {
        let h = T::lit(0.5);
        Self {
            dim: 2,
            entries: vec![h; 4],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> T {
        self.entries[row * self.dim + col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn randomizer_sends_any_bit_to_uniform() {
        for b in 0..2u8 {
            let s = ClassicalState::<f64>::from_bits(&[b]).unwrap();
            let r = s.apply(&StochasticMatrix::randomizer(), &[0]).unwrap();
            assert_eq!(r.probabilities(), &[0.5, 0.5]);
        }
    }

    #[test]
    fn rejects_non_stochastic() {
        assert!(StochasticMatrix::<f64>::new(2, vec![0.5, 0.5, 0.6, 0.5]).is_err());
        assert!(ClassicalState::<f64>::from_probabilities(vec![0.7, 0.7]).is_err());
        assert!(ClassicalState::<f64>::from_probabilities(vec![1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn marginal_respects_order() {
        let s = ClassicalState::<f64>::from_bits(&[1, 0, 0]).unwrap();
        let m = s.marginal(&[2, 0]).unwrap();
        assert_eq!(m.probabilities(), &[0.0, 1.0, 0.0, 0.0]);
    }
}
