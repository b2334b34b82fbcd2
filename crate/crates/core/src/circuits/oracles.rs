use super::circuit::Circuit;
use super::classical::ClassicalState;
use super::{BoxFunction, OracleFamily, OracleSpec};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Limits, StateVector};
use crate::scalar::Real;

/// Output of an oracle on its primed registers, party order (A', B', ...).
#[derive(Debug, Clone, PartialEq)]
pub enum PrimedState<T> {
    Pure(StateVector<T>),
    Classical(ClassicalState<T>),
}

impl<T: Real> PrimedState<T> {
    pub fn num_qubits(&self) -> usize {
        match self {
            PrimedState::Pure(s) => s.num_qubits(),
            PrimedState::Classical(c) => c.num_bits(),
        }
    }

    /// Outcome distribution of a computational-basis readout.
    pub fn computational_distribution(&self) -> Vec<T> {
        match self {
            PrimedState::Pure(s) => s.probabilities(),
            PrimedState::Classical(c) => c.probabilities().to_vec(),
        }
    }

    pub fn to_density_matrix(&self) -> DensityMatrix<T> {
        match self {
            PrimedState::Pure(s) => s.to_density_matrix(),
            PrimedState::Classical(c) => c.to_density_matrix(),
        }
    }

    pub fn as_pure(&self) -> Option<&StateVector<T>> {
        match self {
            PrimedState::Pure(s) => Some(s),
            PrimedState::Classical(_) => None,
        }
    }

    pub fn as_classical(&self) -> Option<&ClassicalState<T>> {
        match self {
            PrimedState::Classical(c) => Some(c),
            PrimedState::Pure(_) => None,
        }
    }
}

/// An oracle circuit together with which wires carry the parties' inputs
/// and which primed wires are handed back, in party order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLayout {
    pub circuit: Circuit,
    pub unprimed: Vec<usize>,
    pub primed: Vec<usize>,
}

/// Wires (A, B, B', A'): H on B', CNOT B'→A', Toffoli A,B→B'.
pub fn bipartite_circuit() -> OracleLayout {
    let (a, b, bp, ap) = (0, 1, 2, 3);
    OracleLayout {
        circuit: Circuit::new(4).split(bp).cnot(bp, ap).mcx(vec![a, b], bp),
        unprimed: vec![a, b],
        primed: vec![ap, bp],
    }
}

/// Wires (A, B, C, A', B', C'): A' and B' are split, their parity is
/// copied into C', then one controlled-NOT per monomial of `f` adds
/// `f(x, y, z)` into C'.
pub fn tripartite_circuit(f: BoxFunction) -> Result<OracleLayout> {
    parity_circuit(3, &f.monomials(3)?)
}

/// n unprimed wires followed by n primed wires; the product of all
/// inputs is added into the last primed wire.
pub fn nparty_xyz_circuit(parties: usize) -> Result<OracleLayout> {
    if parties < 2 {
        return Err(Error::arg(format!("need at least two parties, got {parties}")));
    }
    parity_circuit(parties, &[(0..parties).collect()])
}

fn parity_circuit(parties: usize, monomials: &[Vec<usize>]) -> Result<OracleLayout> {
    let last = 2 * parties - 1;
    let mut circuit = Circuit::new(2 * parties);
    for p in 0..parties - 1 {
        circuit = circuit.split(parties + p);
    }
    for p in 0..parties - 1 {
        circuit = circuit.cnot(parties + p, last);
    }
    for mono in monomials {
        circuit = circuit.mcx(mono.clone(), last);
    }
    Ok(OracleLayout {
        circuit,
        unprimed: (0..parties).collect(),
        primed: (parties..2 * parties).collect(),
    })
}

impl OracleLayout {
    pub fn for_spec(spec: &OracleSpec) -> Result<Self> {
        match spec.family() {
            OracleFamily::BipartiteQuantum | OracleFamily::BipartiteClassical => {
                Ok(bipartite_circuit())
            }
            OracleFamily::TripartiteQuantum | OracleFamily::TripartiteClassical => {
                tripartite_circuit(spec.box_function())
            }
            OracleFamily::NPartyXyzQuantum | OracleFamily::NPartyXyzClassical => {
                nparty_xyz_circuit(spec.parties())
            }
        }
    }

    fn initial_bits(&self, inputs: &[u8]) -> Result<Vec<u8>> {
        if inputs.len() != self.unprimed.len() {
            return Err(Error::arg(format!(
                "oracle takes {} inputs, got {}",
                self.unprimed.len(),
                inputs.len()
            )));
        }
        if let Some(b) = inputs.iter().find(|&&b| b > 1) {
            return Err(Error::arg(format!("input {b} is not a bit")));
        }
        // Primed wires always start in 0; unprimed wires carry basis inputs.
        let mut bits = vec![0u8; self.circuit.wires()];
        for (&w, &b) in self.unprimed.iter().zip(inputs) {
            bits[w] = b;
        }
        Ok(bits)
    }

    fn fixed(&self, inputs: &[u8]) -> Vec<(usize, u8)> {
        self.unprimed.iter().copied().zip(inputs.iter().copied()).collect()
    }

    /// Full post-circuit register for the restricted input preparation.
    pub fn run_full_quantum<T: Real>(&self, inputs: &[u8]) -> Result<StateVector<T>> {
        self.circuit
            .run_quantum(&StateVector::from_bits(&self.initial_bits(inputs)?)?)
    }

    pub fn run_full_classical<T: Real>(&self, inputs: &[u8]) -> Result<ClassicalState<T>> {
        self.circuit
            .run_classical(&ClassicalState::from_bits(&self.initial_bits(inputs)?)?)
    }

    /// Runs the quantum circuit, checks the inputs came back untouched and
    /// returns the primed pure state.
    pub fn run_quantum<T: Real>(&self, inputs: &[u8]) -> Result<StateVector<T>> {
        let full = self.run_full_quantum::<T>(inputs)?;
        let fixed = self.fixed(inputs);
        let overlap = full.prob_of_bits(&fixed)?;
        if (overlap - T::one()).abs() > T::algebraic_tol() {
            return Err(Error::Consistency(format!(
                "oracle altered the input registers (overlap {overlap})"
            )));
        }
        Ok(full.condition_on(&fixed, &self.primed)?.0)
    }

    pub fn run_classical<T: Real>(&self, inputs: &[u8]) -> Result<ClassicalState<T>> {
        let full = self.run_full_classical::<T>(inputs)?;
        let overlap = full.prob_of_bits(&self.fixed(inputs));
        if (overlap - T::one()).abs() > T::algebraic_tol() {
            return Err(Error::Consistency(format!(
                "oracle altered the input registers (overlap {overlap})"
            )));
        }
        full.marginal(&self.primed)
    }
}

pub fn run_bipartite_quantum_oracle<T: Real>(x: u8, y: u8) -> Result<StateVector<T>> {
    bipartite_circuit().run_quantum(&[x, y])
}

pub fn run_bipartite_classical_oracle<T: Real>(x: u8, y: u8) -> Result<ClassicalState<T>> {
    bipartite_circuit().run_classical(&[x, y])
}

pub fn run_tripartite_quantum_oracle<T: Real>(
    f: BoxFunction,
    x: u8,
    y: u8,
    z: u8,
) -> Result<StateVector<T>> {
    tripartite_circuit(f)?.run_quantum(&[x, y, z])
}

pub fn run_tripartite_classical_oracle<T: Real>(
    f: BoxFunction,
    x: u8,
    y: u8,
    z: u8,
) -> Result<ClassicalState<T>> {
    tripartite_circuit(f)?.run_classical(&[x, y, z])
}

pub fn run_nparty_xyz_oracle<T: Real>(
    quantum: bool,
    inputs: &[u8],
    limits: &Limits,
) -> Result<PrimedState<T>> {
    limits.check_parties(inputs.len())?;
    let layout = nparty_xyz_circuit(inputs.len())?;
    if quantum {
        layout.run_quantum(inputs).map(PrimedState::Pure)
    } else {
        layout.run_classical(inputs).map(PrimedState::Classical)
    }
}

/// Runs whichever oracle `spec` names.
pub fn run_oracle<T: Real>(spec: &OracleSpec, inputs: &[u8], limits: &Limits) -> Result<PrimedState<T>> {
    limits.check_parties(spec.parties())?;
    if inputs.len() != spec.parties() {
        return Err(Error::arg(format!(
            "{spec} takes {} inputs, got {}",
            spec.parties(),
            inputs.len()
        )));
    }
    let layout = OracleLayout::for_spec(spec)?;
    if spec.is_quantum() {
        layout.run_quantum(inputs).map(PrimedState::Pure)
    } else {
        layout.run_classical(inputs).map(PrimedState::Classical)
    }
}
