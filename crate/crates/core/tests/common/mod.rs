#![allow(dead_code)]

use nsbox::linalg::{CMatrix, Cplx, DensityMatrix, StateVector};
use nsbox::measurement::{BlochDirection, PartySettings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn c(re: f64) -> Cplx<f64> {
    Cplx::new(re, 0.0)
}

/// Dense matrix of `gate` acting on `targets` of an `n`-qubit register,
/// built by permuting basis states explicitly (no library kernels).
pub fn embed(gate: &[Vec<f64>], n: usize, targets: &[usize]) -> CMatrix<f64> {
    let dim = 1 << n;
    let k = targets.len();
    let mut data = vec![c(0.0); dim * dim];
    for col in 0..dim {
        let sub_col = targets
            .iter()
            .fold(0, |acc, &t| (acc << 1) | ((col >> (n - 1 - t)) & 1));
        for sub_row in 0..(1 << k) {
            let mut row = col;
            for (j, &t) in targets.iter().enumerate() {
                let bit = (sub_row >> (k - 1 - j)) & 1;
                let mask = 1 << (n - 1 - t);
                row = if bit == 1 { row | mask } else { row & !mask };
            }
            data[row * dim + col] = c(gate[sub_row][sub_col]);
        }
    }
    CMatrix::from_vec(dim, dim, data).unwrap()
}

pub fn hadamard() -> Vec<Vec<f64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![vec![h, h], vec![h, -h]]
}

/// X on the last listed wire controlled on all the others.
pub fn mcx(controls: usize) -> Vec<Vec<f64>> {
    let dim = 1 << (controls + 1);
    let mut m = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        let j = if i >> 1 == (dim >> 1) - 1 { i ^ 1 } else { i };
        m[j][i] = 1.0;
    }
    m
}

pub fn basis_column(n: usize, index: usize) -> Vec<Cplx<f64>> {
    let mut v = vec![c(0.0); 1 << n];
    v[index] = c(1.0);
    v
}

/// Reduced state of `keep` (in that order) from a pure `n`-qubit vector,
/// by summing over the other wires directly.
pub fn reduce(amps: &[Cplx<f64>], n: usize, keep: &[usize]) -> Vec<Vec<Cplx<f64>>> {
    let k = keep.len();
    let mut rho = vec![vec![c(0.0); 1 << k]; 1 << k];
    let sub = |i: usize| keep.iter().fold(0, |acc, &q| (acc << 1) | ((i >> (n - 1 - q)) & 1));
    let rest_mask: usize = (0..n)
        .filter(|q| !keep.contains(q))
        .map(|q| 1 << (n - 1 - q))
        .sum();
    for i in 0..amps.len() {
        for j in 0..amps.len() {
            if i & rest_mask == j & rest_mask {
                rho[sub(i)][sub(j)] += amps[i] * amps[j].conj();
            }
        }
    }
    rho
}

pub fn max_dev(a: &[Vec<Cplx<f64>>], b: &DensityMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for (r, row) in a.iter().enumerate() {
        for (col, v) in row.iter().enumerate() {
            worst = worst.max((v - b.matrix()[(r, col)]).norm());
        }
    }
    worst
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the sphere.
pub fn random_direction(rng: &mut ChaCha8Rng) -> BlochDirection<f64> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    BlochDirection::new(z.acos(), phi).unwrap()
}

pub fn random_party(rng: &mut ChaCha8Rng) -> PartySettings<f64> {
    PartySettings::unsigned(vec![random_direction(rng), random_direction(rng)]).unwrap()
}

pub fn computational() -> PartySettings<f64> {
    PartySettings::same_for_both(BlochDirection::z())
}

pub fn diagonal() -> PartySettings<f64> {
    PartySettings::same_for_both(BlochDirection::x())
}

/// Alice measures ŷ, Bob measures ŷ with his outcome labels swapped.
pub fn circular() -> (PartySettings<f64>, PartySettings<f64>) {
    use nsbox::measurement::Sign;
    let y = BlochDirection::y();
    (
        PartySettings::same_for_both(y),
        PartySettings::new(vec![y, y], vec![Sign::Flip, Sign::Flip]).unwrap(),
    )
}

/// `(|01⟩ + |10⟩)/√2`.
pub fn psi_plus() -> StateVector<f64> {
    StateVector::from_real_unnormalized(&[0.0, 1.0, 1.0, 0.0]).unwrap()
}

/// Alice ẑ, x̂; Bob (x̂ − ẑ)/√2, (−x̂ − ẑ)/√2 — optimal for `|Ψ⁺⟩`.
pub fn tsirelson_settings() -> [PartySettings<f64>; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let dir = |v: [f64; 3]| BlochDirection::from_vector(v).unwrap();
    [
        PartySettings::unsigned(vec![dir([0.0, 0.0, 1.0]), dir([1.0, 0.0, 0.0])]).unwrap(),
        PartySettings::unsigned(vec![dir([s, 0.0, -s]), dir([-s, 0.0, -s])]).unwrap(),
    ]
}

/// `½` when the output product matches `(−1)^{xy}`, else 0.
pub fn pr_entry(x: usize, y: usize, a: usize, b: usize) -> f64 {
    if (a ^ b) == (x & y) {
        0.5
    } else {
        0.0
    }
}
