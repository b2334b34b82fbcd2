use crate::error::{Error, Result};

/// Environment variable that overrides [`Limits::max_qubits`].
pub const MAX_QUBITS_ENV: &str = "NSBOX_MAX_QUBITS";

pub const DEFAULT_MAX_QUBITS: usize = 10;

/// Size caps for dense objects.
///
/// `max_qubits` bounds every dense matrix axis at `2^max_qubits` and the
/// number of parties an oracle may have. Oracle registers hold one
/// unprimed and one primed qubit per party, so they may reach
/// `2 * max_qubits` qubits; the unprimed half always stays in a
/// computational basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_qubits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Limits {
    pub fn new(max_qubits: usize) -> Self {
        Self { max_qubits }
    }

    /// Reads `NSBOX_MAX_QUBITS`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_QUBITS_ENV) {
            Ok(raw) => {
                let max_qubits = raw.trim().parse::<usize>().map_err(|_| {
                    Error::arg(format!("{MAX_QUBITS_ENV}={raw:?} is not a qubit count"))
                })?;
                if max_qubits == 0 || max_qubits > 30 {
                    return Err(Error::arg(format!(
                        "{MAX_QUBITS_ENV} must lie in 1..=30, got {max_qubits}"
                    )));
                }
                Ok(Self { max_qubits })
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn max_dim(&self) -> usize {
        1usize << self.max_qubits
    }

    pub(crate) fn check_dim(&self, what: &'static str, dim: usize) -> Result<()> {
        if dim > self.max_dim() {
            return Err(Error::Capacity {
                what,
                requested: dim,
                cap: self.max_dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_parties(&self, parties: usize) -> Result<()> {
        if parties > self.max_qubits {
            return Err(Error::Capacity {
                what: "party count",
                requested: parties,
                cap: self.max_qubits,
            });
        }
        Ok(())
    }
}

/// `log2(dim)` when `dim` is a positive power of two.
pub(crate) fn qubits_for_dim(dim: usize) -> Option<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        None
    } else {
        Some(dim.trailing_zeros() as usize)
    }
}
