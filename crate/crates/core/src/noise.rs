//! Isotropic-noise model, seeded coincidence-count sampling, and the
//! count-based correlator and CHSH estimators.

use std::io::{Read, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::behavior::{behavior_from_states, Behavior};
use crate::circuits::{run_oracle, OracleSpec};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Limits, StateVector};
use crate::measurement::PartySettings;
use crate::scalar::Real;

/// Half-wave-plate angles labelling the two projector outcomes.
pub const PLATE_ANGLES: [u32; 2] = [0, 45];

/// The two-photon source state `(|01⟩ + |10⟩)/√2`.
pub fn source_state<T: Real>() -> StateVector<T> {
    StateVector::from_real_unnormalized(&[0.0, 1.0, 1.0, 0.0]).expect("nonzero amplitudes")
}

/// Mixing weight of the ideal state against the maximally mixed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityModel<T> {
    v: T,
}

impl<T: Real> VisibilityModel<T> {
    pub fn new(v: T) -> Result<Self> {
        if !(v >= T::zero() && v <= T::one()) {
            return Err(Error::arg(format!("visibility must lie in [0, 1], got {v}")));
        }
        Ok(Self { v })
    }

    pub fn ideal() -> Self {
        Self { v: T::one() }
    }

    pub fn v(&self) -> T {
        self.v
    }

    pub fn apply(&self, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        let mixed = DensityMatrix::maximally_mixed(rho.num_qubits());
        rho.mix(&mixed, self.v).expect("same dimension")
    }
}

/// `v·ρ + (1−v)·I/d`.
pub fn apply_visibility<T: Real>(rho: &DensityMatrix<T>, v: T) -> Result<DensityMatrix<T>> {
    Ok(VisibilityModel::new(v)?.apply(rho))
}

/// Behavior of an oracle whose primed output passes through the
/// isotropic channel before measurement.
pub fn noisy_oracle_behavior<T: Real>(
    spec: &OracleSpec,
    settings: &[PartySettings<T>],
    v: T,
) -> Result<Behavior<T>> {
    let model = VisibilityModel::new(v)?;
    let limits = Limits::default();
    behavior_from_states(settings, |bits| {
        Ok(model.apply(&run_oracle::<T>(spec, bits, &limits)?.to_density_matrix()))
    })
}

/// Behavior of one shared state, after the isotropic channel.
pub fn noisy_state_behavior<T: Real>(
    rho: &DensityMatrix<T>,
    settings: &[PartySettings<T>],
    v: T,
) -> Result<Behavior<T>> {
    let noisy = apply_visibility(rho, v)?;
    behavior_from_states(settings, |_| Ok(noisy.clone()))
}

/// Bipartite coincidence counts `C(a°, b°|x, y)`.
///
/// `counts[2x + y][2a + b]` with outcome index 0 ↔ plate angle 0°.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountsTable {
    counts: [[u64; 4]; 4],
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    x: u8,
    y: u8,
    a_deg: u32,
    b_deg: u32,
    count: u64,
}

fn plate_index(deg: u32) -> Result<usize> {
    PLATE_ANGLES
        .iter()
        .position(|&d| d == deg)
        .ok_or_else(|| Error::arg(format!("plate angle must be 0 or 45, got {deg}")))
}

impl CountsTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_array(counts: [[u64; 4]; 4]) -> Self {
        Self { counts }
    }

    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> u64 {
        self.counts[2 * x + y][2 * a + b]
    }

    pub fn set(&mut self, x: usize, y: usize, a: usize, b: usize, n: u64) {
        self.counts[2 * x + y][2 * a + b] = n;
    }

    pub fn cells(&self, x: usize, y: usize) -> [u64; 4] {
        self.counts[2 * x + y]
    }

    pub fn total(&self, x: usize, y: usize) -> u64 {
        self.cells(x, y).iter().sum()
    }

    /// Empirical frequencies as a behavior.
    pub fn to_behavior<T: Real>(&self) -> Result<Behavior<T>> {
        let mut table = Vec::with_capacity(16);
        for (r, row) in self.counts.iter().enumerate() {
            let n: u64 = row.iter().sum();
            if n == 0 {
                return Err(Error::InsufficientData(format!(
                    "no counts for input ({}, {})",
                    r >> 1,
                    r & 1
                )));
            }
            table.extend(row.iter().map(|&c| T::lit(c as f64) / T::lit(n as f64)));
        }
        Behavior::new(vec![2, 2], vec![2, 2], table)
    }

    /// Writes CSV with columns `x,y,a_deg,b_deg,count`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for x in 0..2u8 {
            for y in 0..2u8 {
                for a in 0..2 {
                    for b in 0..2 {
                        out.serialize(CsvRow {
                            x,
                            y,
                            a_deg: PLATE_ANGLES[a],
                            b_deg: PLATE_ANGLES[b],
                            count: self.get(x as usize, y as usize, a, b),
                        })
                        .map_err(|e| Error::arg(format!("CSV write failed: {e}")))?;
                    }
                }
            }
        }
        out.flush().map_err(|e| Error::arg(format!("CSV write failed: {e}")))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    /// Reads CSV written by [`CountsTable::write_csv`]. Missing cells
    /// count as zero; repeated cells are rejected.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut table = Self::new();
        let mut seen = [[false; 4]; 4];
        for row in csv::Reader::from_reader(r).deserialize::<CsvRow>() {
            let row = row.map_err(|e| Error::arg(format!("bad counts CSV: {e}")))?;
            if row.x > 1 || row.y > 1 {
                return Err(Error::arg("inputs must be 0 or 1"));
            }
            let (x, y) = (row.x as usize, row.y as usize);
            let (a, b) = (plate_index(row.a_deg)?, plate_index(row.b_deg)?);
            if std::mem::replace(&mut seen[2 * x + y][2 * a + b], true) {
                return Err(Error::arg(format!(
                    "duplicate cell x={x} y={y} a_deg={} b_deg={}",
                    row.a_deg, row.b_deg
                )));
            }
            table.set(x, y, a, b, row.count);
        }
        Ok(table)
    }
}

/// Draws `shots` outcomes per input tuple from `b`.
///
/// Each input tuple `r = 2x + y` uses its own ChaCha8 stream
/// (`seed_from_u64(seed)`, stream `r`); the multinomial is drawn as a
/// chain of binomials over the cells in order.
pub fn sample_counts<T: Real>(b: &Behavior<T>, shots: u64, seed: u64) -> Result<CountsTable> {
    if shots == 0 {
        return Err(Error::arg("shots must be at least 1"));
    }
    if !b.is_binary(2) {
        return Err(Error::arg("count sampling needs a two-party binary behavior"));
    }
    let mut table = CountsTable::new();
    for r in 0..4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let probs: Vec<f64> = b.row(&[r >> 1, r & 1]).iter().map(|p| p.as_f64()).collect();
        let mut remaining = shots;
        let mut mass = 1.0;
        for (cell, &p) in probs.iter().enumerate() {
            let n = if cell == probs.len() - 1 || remaining == 0 {
                remaining
            } else if p <= 0.0 {
                0
            } else {
                let q = (p / mass).clamp(0.0, 1.0);
                Binomial::new(remaining, q)
                    .map_err(|e| Error::Consistency(format!("binomial parameters: {e}")))?
                    .sample(&mut rng)
            };
            table.counts[r][cell] = n;
            remaining -= n;
            mass -= p;
        }
    }
    Ok(table)
}

fn same_diff(c: &CountsTable, x: usize, y: usize) -> Result<(f64, f64)> {
    if x > 1 || y > 1 {
        return Err(Error::arg("inputs must be 0 or 1"));
    }
    let cells = c.cells(x, y);
    let same = (cells[0] + cells[3]) as f64;
    let diff = (cells[1] + cells[2]) as f64;
    if same + diff == 0.0 {
        return Err(Error::InsufficientData(format!("no counts for input ({x}, {y})")));
    }
    Ok((same, diff))
}

/// `E = (N_same − N_diff) / N`.
pub fn correlator_from_counts<T: Real>(c: &CountsTable, x: usize, y: usize) -> Result<T> {
    let (same, diff) = same_diff(c, x, y)?;
    Ok(T::lit((same - diff) / (same + diff)))
}

/// Variance of the count correlator with each cell an independent
/// Poisson variable: `[N_same(1−E)² + N_diff(1+E)²] / N²`.
fn correlator_variance(same: f64, diff: f64) -> f64 {
    let n = same + diff;
    let e = (same - diff) / n;
    (same * (1.0 - e).powi(2) + diff * (1.0 + e).powi(2)) / (n * n)
}

/// `S = |Σ (−1)^{xy} E_xy|` and its standard error.
pub fn chsh_from_counts<T: Real>(c: &CountsTable) -> Result<(T, T)> {
    let mut s = 0.0;
    let mut var = 0.0;
    for r in 0..4 {
        let (x, y) = (r >> 1, r & 1);
        let (same, diff) = same_diff(c, x, y)?;
        let e = (same - diff) / (same + diff);
        s += if x * y == 1 { -e } else { e };
        var += correlator_variance(same, diff);
    }
    Ok((T::lit(s.abs()), T::lit(var.sqrt())))
}

/// Visibility at which the ideal score drops to `target`.
pub fn fit_visibility<T: Real>(target: T, ideal: T) -> Result<T> {
    if !(target > T::zero()) || !(ideal > T::zero()) {
        return Err(Error::arg("scores must be positive"));
    }
    if target > ideal {
        return Err(Error::arg(format!(
            "target score {target} exceeds the ideal score {ideal}"
        )));
    }
    Ok(target / ideal)
}
