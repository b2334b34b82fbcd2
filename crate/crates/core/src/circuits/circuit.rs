use super::classical::{ClassicalState, StochasticMatrix};
use crate::error::{Error, Result};
use crate::linalg::{StateVector, Unitary};
use crate::scalar::Real;

/// A gate with both a quantum and a classical reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    /// Hadamard on a qubit; the randomizing gate on a bit.
    Split(usize),
    Cnot { control: usize, target: usize },
    /// NOT on `target` controlled on every wire in `controls`.
    Mcx { controls: Vec<usize>, target: usize },
}

/// Fixed wire layout plus gate list. The same gate list runs either on
/// qubits or on stochastic bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    wires: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(wires: usize) -> Self {
        Self {
            wires,
            gates: Vec::new(),
        }
    }

    pub fn split(mut self, wire: usize) -> Self {
        self.gates.push(Gate::Split(wire));
        self
    }

    pub fn cnot(mut self, control: usize, target: usize) -> Self {
        self.gates.push(Gate::Cnot { control, target });
        self
    }

    pub fn mcx(mut self, controls: Vec<usize>, target: usize) -> Self {
        self.gates.push(Gate::Mcx { controls, target });
        self
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn run_quantum<T: Real>(&self, init: &StateVector<T>) -> Result<StateVector<T>> {
        self.check_width(init.num_qubits())?;
        let mut s = init.clone();
        for gate in &self.gates {
            match gate {
                Gate::Split(q) => s.apply_in_place(&Unitary::hadamard(), &[*q])?,
                Gate::Cnot { control, target } => {
                    s.apply_in_place(&Unitary::cnot(), &[*control, *target])?
                }
                Gate::Mcx { controls, target } if controls.len() == 2 => {
                    s.apply_in_place(&Unitary::toffoli(), &[controls[0], controls[1], *target])?
                }
                Gate::Mcx { controls, target } => s.apply_mcx_in_place(controls, *target)?,
            }
        }
        Ok(s)
    }

    pub fn run_classical<T: Real>(&self, init: &ClassicalState<T>) -> Result<ClassicalState<T>> {
        self.check_width(init.num_bits())?;
        let randomizer = StochasticMatrix::randomizer();
        let mut s = init.clone();
        for gate in &self.gates {
            s = match gate {
                Gate::Split(q) => s.apply(&randomizer, &[*q])?,
                Gate::Cnot { control, target } => s.apply_mcx(&[*control], *target)?,
                Gate::Mcx { controls, target } => s.apply_mcx(controls, *target)?,
            };
        }
        Ok(s)
    }

    fn check_width(&self, n: usize) -> Result<()> {
        if n != self.wires {
            return Err(Error::arg(format!(
                "circuit has {} wires but the register has {n}",
                self.wires
            )));
        }
        Ok(())
    }
}

/// Runs `circuit` on an arbitrary computational basis input, with no
/// restriction on which wires carry data.
///
/// This bypasses the input discipline that keeps oracles non-signaling;
/// it exists to exhibit the signaling CNOT.
pub fn run_with_free_inputs<T: Real>(circuit: &Circuit, bits: &[u8]) -> Result<StateVector<T>> {
    circuit.run_quantum(&StateVector::from_bits(bits)?)
}

/// Two-wire CNOT, Alice's wire 0 controlling Bob's wire 1.
pub fn cnot_circuit() -> Circuit {
    Circuit::new(2).cnot(0, 1)
}

/// Alice may only feed `|+⟩`: the CNOT then produces `|Φ⁺⟩` from `|00⟩`.
pub fn restricted_cnot_state<T: Real>() -> Result<StateVector<T>> {
    Circuit::new(2)
        .split(0)
        .cnot(0, 1)
        .run_quantum(&StateVector::from_bits(&[0, 0])?)
}
