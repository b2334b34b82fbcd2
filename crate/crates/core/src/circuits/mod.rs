//! Quantum and classical oracles that turn restricted inputs into
//! input-dependent correlated states on the primed registers.

mod circuit;
mod classical;
mod oracles;

pub use circuit::{cnot_circuit, restricted_cnot_state, run_with_free_inputs, Circuit, Gate};
pub use classical::{ClassicalState, StochasticMatrix};
pub use oracles::{
    bipartite_circuit, nparty_xyz_circuit, run_bipartite_classical_oracle,
    run_bipartite_quantum_oracle, run_nparty_xyz_oracle, run_oracle, run_tripartite_classical_oracle,
    run_tripartite_quantum_oracle, tripartite_circuit, OracleLayout, PrimedState,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parity function a full-correlation box imposes on the outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxFunction {
    /// Product of all inputs; `xy` for two parties, `xyz` for three.
    Xyz,
    /// `xy ⊕ xz` (three parties only).
    XTimesYPlusZ,
    /// `xy ⊕ yz ⊕ zx` (three parties only).
    Svetlichny,
}

impl BoxFunction {
    pub fn name(&self) -> &'static str {
        match self {
            BoxFunction::Xyz => "xyz",
            BoxFunction::XTimesYPlusZ => "x(y+z)",
            BoxFunction::Svetlichny => "svetlichny",
        }
    }

    /// Monomials of the function as sets of party indices.
    pub fn monomials(&self, parties: usize) -> Result<Vec<Vec<usize>>> {
        match self {
            BoxFunction::Xyz => Ok(vec![(0..parties).collect()]),
            BoxFunction::XTimesYPlusZ if parties == 3 => Ok(vec![vec![0, 1], vec![0, 2]]),
            BoxFunction::Svetlichny if parties == 3 => {
                Ok(vec![vec![0, 1], vec![1, 2], vec![2, 0]])
            }
            _ => Err(Error::arg(format!(
                "{} box is defined for three parties, not {parties}",
                self.name()
            ))),
        }
    }

    /// Evaluates the function on input bits.
    pub fn eval(&self, inputs: &[u8]) -> Result<u8> {
        Ok(self
            .monomials(inputs.len())?
            .iter()
            .map(|mono| mono.iter().map(|&i| inputs[i]).product::<u8>())
            .fold(0, |acc, m| acc ^ m))
    }
}

impl fmt::Display for BoxFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoxFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xyz" => Ok(BoxFunction::Xyz),
            "x(y+z)" | "x-yz" | "xy+xz" => Ok(BoxFunction::XTimesYPlusZ),
            "svetlichny" | "sv" => Ok(BoxFunction::Svetlichny),
            _ => Err(Error::arg(format!("unknown box function {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleFamily {
    BipartiteQuantum,
    BipartiteClassical,
    TripartiteQuantum,
    TripartiteClassical,
    NPartyXyzQuantum,
    NPartyXyzClassical,
}

/// Which oracle circuit to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OracleSpec {
    family: OracleFamily,
    target: Option<BoxFunction>,
    parties: usize,
}

impl OracleSpec {
    pub fn bipartite(quantum: bool) -> Self {
        Self {
            family: if quantum {
                OracleFamily::BipartiteQuantum
            } else {
                OracleFamily::BipartiteClassical
            },
            target: None,
            parties: 2,
        }
    }

    pub fn tripartite(target: BoxFunction, quantum: bool) -> Self {
        Self {
            family: if quantum {
                OracleFamily::TripartiteQuantum
            } else {
                OracleFamily::TripartiteClassical
            },
            target: Some(target),
            parties: 3,
        }
    }

    pub fn nparty_xyz(parties: usize, quantum: bool) -> Result<Self> {
        if parties < 2 {
            return Err(Error::arg(format!("need at least two parties, got {parties}")));
        }
        Ok(Self {
            family: if quantum {
                OracleFamily::NPartyXyzQuantum
            } else {
                OracleFamily::NPartyXyzClassical
            },
            target: None,
            parties,
        })
    }

    pub fn family(&self) -> OracleFamily {
        self.family
    }

    /// Box function for tripartite specs; `None` otherwise.
    pub fn target(&self) -> Option<BoxFunction> {
        self.target
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn is_quantum(&self) -> bool {
        matches!(
            self.family,
            OracleFamily::BipartiteQuantum
                | OracleFamily::TripartiteQuantum
                | OracleFamily::NPartyXyzQuantum
        )
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(
            self.family,
            OracleFamily::BipartiteQuantum | OracleFamily::BipartiteClassical
        )
    }

    /// Parity function the oracle's computational-basis outputs satisfy.
    pub fn box_function(&self) -> BoxFunction {
        self.target.unwrap_or(BoxFunction::Xyz)
    }

    /// Same circuit family with the other gate semantics.
    pub fn counterpart(&self) -> Self {
        let family = match self.family {
            OracleFamily::BipartiteQuantum => OracleFamily::BipartiteClassical,
            OracleFamily::BipartiteClassical => OracleFamily::BipartiteQuantum,
            OracleFamily::TripartiteQuantum => OracleFamily::TripartiteClassical,
            OracleFamily::TripartiteClassical => OracleFamily::TripartiteQuantum,
            OracleFamily::NPartyXyzQuantum => OracleFamily::NPartyXyzClassical,
            OracleFamily::NPartyXyzClassical => OracleFamily::NPartyXyzQuantum,
        };
        Self { family, ..*self }
    }
}

impl fmt::Display for OracleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_quantum() { "quantum" } else { "classical" };
        match self.family {
            OracleFamily::BipartiteQuantum | OracleFamily::BipartiteClassical => {
                write!(f, "bipartite-{kind}")
            }
            OracleFamily::TripartiteQuantum | OracleFamily::TripartiteClassical => {
                write!(f, "tripartite-{}-{kind}", self.box_function())
            }
            OracleFamily::NPartyXyzQuantum | OracleFamily::NPartyXyzClassical => {
                write!(f, "{}-party-xyz-{kind}", self.parties)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_functions_match_definitions() {
        for x in 0..2u8 {
            for y in 0..2u8 {
                for z in 0..2u8 {
                    let i = [x, y, z];
                    assert_eq!(BoxFunction::Xyz.eval(&i).unwrap(), x & y & z);
                    assert_eq!(BoxFunction::XTimesYPlusZ.eval(&i).unwrap(), (x & y) ^ (x & z));
                    assert_eq!(
                        BoxFunction::Svetlichny.eval(&i).unwrap(),
                        (x & y) ^ (y & z) ^ (z & x)
                    );
                }
            }
        }
        assert!(BoxFunction::Svetlichny.eval(&[1, 1]).is_err());
        assert_eq!(BoxFunction::Xyz.eval(&[1, 1, 1, 1, 0]).unwrap(), 0);
    }

    #[test]
    fn nparty_needs_two_parties() {
        assert!(OracleSpec::nparty_xyz(1, true).is_err());
        assert!(OracleSpec::nparty_xyz(2, false).is_ok());
    }
}
