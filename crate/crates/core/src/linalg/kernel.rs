//! In-place gate kernels over big-endian amplitude arrays (qubit 0 is the
//! most significant index bit).

use num_complex::Complex;

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[inline]
pub(crate) fn bit_mask(num_qubits: usize, qubit: usize) -> usize {
    1usize << (num_qubits - 1 - qubit)
}

pub(crate) fn validate_targets(num_qubits: usize, targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::arg("target list is empty"));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= num_qubits {
            return Err(Error::arg(format!(
                "qubit {t} out of range for a {num_qubits}-qubit register"
            )));
        }
        if targets[..i].contains(&t) {
            return Err(Error::arg(format!("qubit {t} listed twice")));
        }
    }
    Ok(())
}

/// Applies `m` (dimension `2^targets.len()`) to `targets`, identity elsewhere.
/// `targets[0]` maps to the most significant bit of the gate's own index.
pub(crate) fn apply_matrix<T: Real>(
    amps: &mut [Complex<T>],
    num_qubits: usize,
    m: &CMatrix<T>,
    targets: &[usize],
) {
    let k = targets.len();
    let dim = 1usize << k;
    debug_assert_eq!(m.rows(), dim);
    if k == 1 {
        apply_single(amps, bit_mask(num_qubits, targets[0]), m);
        return;
    }
    let masks: Vec<usize> = targets.iter().map(|&q| bit_mask(num_qubits, q)).collect();
    let target_mask = masks.iter().fold(0, |acc, m| acc | m);
    let mut idx = vec![0usize; dim];
    let mut buf = vec![Complex::new(T::zero(), T::zero()); dim];
    for base in 0..amps.len() {
        if base & target_mask != 0 {
            continue;
        }
        for (s, slot) in idx.iter_mut().enumerate() {
            let mut i = base;
            for (j, mask) in masks.iter().enumerate() {
                if (s >> (k - 1 - j)) & 1 == 1 {
                    i |= mask;
                }
            }
            *slot = i;
        }
        for (s, &i) in idx.iter().enumerate() {
            buf[s] = amps[i];
        }
        for (r, &i) in idx.iter().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (c, b) in buf.iter().enumerate() {
                acc += m[(r, c)] * b;
            }
            amps[i] = acc;
        }
    }
}

fn apply_single<T: Real>(amps: &mut [Complex<T>], mask: usize, m: &CMatrix<T>) {
    let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    for i in (0..amps.len()).filter(|i| i & mask == 0) {
        let (a, b) = (amps[i], amps[i | mask]);
        amps[i] = m00 * a + m01 * b;
        amps[i | mask] = m10 * a + m11 * b;
    }
}

/// Multi-controlled NOT: flips `target` wherever every control bit is 1.
pub(crate) fn apply_mcx<T: Copy>(
    amps: &mut [T],
    num_qubits: usize,
    controls: &[usize],
    target: usize,
) {
    let control_mask = controls
        .iter()
        .fold(0, |acc, &q| acc | bit_mask(num_qubits, q));
    let t = bit_mask(num_qubits, target);
    for i in 0..amps.len() {
        if i & control_mask == control_mask && i & t == 0 {
            amps.swap(i, i | t);
        }
    }
}

/// Applies `m` to the columns of a square matrix and `conj(m)` to its rows,
/// i.e. `rho -> M rho M†` restricted to `targets`.
pub(crate) fn conjugate_by<T: Real>(
    rho: &mut CMatrix<T>,
    num_qubits: usize,
    m: &CMatrix<T>,
    targets: &[usize],
) {
    let d = rho.rows();
    let mut col = vec![Complex::new(T::zero(), T::zero()); d];
    for j in 0..d {
        for i in 0..d {
            col[i] = rho[(i, j)];
        }
        apply_matrix(&mut col, num_qubits, m, targets);
        for i in 0..d {
            rho[(i, j)] = col[i];
        }
    }
    let mut conj = m.clone();
    for z in conj.as_mut_slice() {
        *z = z.conj();
    }
    for i in 0..d {
        let row = &mut rho.as_mut_slice()[i * d..(i + 1) * d];
        apply_matrix(row, num_qubits, &conj, targets);
    }
}
