use super::bloch::{BlochDirection, Outcome, PartySettings};
use crate::circuits::{ClassicalState, PrimedState, StochasticMatrix};
use crate::error::{Error, Result};
use crate::linalg::{tensor_product_with, CMatrix, DensityMatrix, Limits, StateVector};
use crate::scalar::Real;

/// A state that local Bloch-direction measurements can be applied to.
pub trait Measurable<T: Real> {
    fn num_qubits(&self) -> usize;

    /// `Tr[ρ O]` for an operator on the full register (real part).
    fn expectation_of(&self, op: &CMatrix<T>) -> Result<T>;

    /// Rotates `qubit` so that measuring `dir` becomes a computational
    /// readout (outcome +1 ↦ bit 0).
    fn rotate_qubit(&self, qubit: usize, dir: &BlochDirection<T>) -> Result<Self>
    where
        Self: Sized;

    /// Readout distribution in the computational basis.
    fn computational_probabilities(&self) -> Vec<T>;

    /// Outcome distribution when qubit `i` is measured along `bases[i]`.
    /// Index bit `i` (big-endian) is 0 for outcome +1.
    fn rotated_distribution(&self, bases: &[BlochDirection<T>]) -> Result<Vec<T>>
    where
        Self: Sized,
    {
        let mut iter = bases.iter().enumerate();
        let Some((q0, d0)) = iter.next() else {
            return Ok(self.computational_probabilities());
        };
        let mut s = self.rotate_qubit(q0, d0)?;
        for (q, dir) in iter {
            s = s.rotate_qubit(q, dir)?;
        }
        Ok(s.computational_probabilities())
    }
}

impl<T: Real> Measurable<T> for StateVector<T> {
    fn num_qubits(&self) -> usize {
        StateVector::num_qubits(self)
    }

    fn expectation_of(&self, op: &CMatrix<T>) -> Result<T> {
        let v = op.matvec(self.amplitudes())?;
        Ok(self
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    fn rotate_qubit(&self, qubit: usize, dir: &BlochDirection<T>) -> Result<Self> {
        self.apply(&dir.basis_change(), &[qubit])
    }

    fn computational_probabilities(&self) -> Vec<T> {
        self.probabilities()
    }
}

impl<T: Real> Measurable<T> for DensityMatrix<T> {
    fn num_qubits(&self) -> usize {
        DensityMatrix::num_qubits(self)
    }

    fn expectation_of(&self, op: &CMatrix<T>) -> Result<T> {
        Ok(self.expectation(op)?.re)
    }

    fn rotate_qubit(&self, qubit: usize, dir: &BlochDirection<T>) -> Result<Self> {
        self.apply(&dir.basis_change(), &[qubit])
    }

    fn computational_probabilities(&self) -> Vec<T> {
        self.diagonal_probabilities()
    }
}

impl<T: Real> Measurable<T> for ClassicalState<T> {
    fn num_qubits(&self) -> usize {
        self.num_bits()
    }

    fn expectation_of(&self, op: &CMatrix<T>) -> Result<T> {
        if op.rows() != self.probabilities().len() || !op.is_square() {
            return Err(Error::arg("operator dimension differs from state"));
        }
        Ok(self
            .probabilities()
            .iter()
            .enumerate()
            .map(|(i, &p)| p * op[(i, i)].re)
            .sum())
    }

    fn rotate_qubit(&self, qubit: usize, dir: &BlochDirection<T>) -> Result<Self> {
        // entry (o, s) = |⟨n_o|s⟩|²
        let plus = dir.eigenket(Outcome::Plus);
        let minus = dir.eigenket(Outcome::Minus);
        let entries = vec![
            plus[0].norm_sqr(),
            plus[1].norm_sqr(),
            minus[0].norm_sqr(),
            minus[1].norm_sqr(),
        ];
        self.apply(&StochasticMatrix::new(2, entries)?, &[qubit])
    }

    fn computational_probabilities(&self) -> Vec<T> {
        self.probabilities().to_vec()
    }
}

impl<T: Real> Measurable<T> for PrimedState<T> {
    fn num_qubits(&self) -> usize {
        PrimedState::num_qubits(self)
    }

    fn expectation_of(&self, op: &CMatrix<T>) -> Result<T> {
        match self {
            PrimedState::Pure(s) => s.expectation_of(op),
            PrimedState::Classical(c) => c.expectation_of(op),
        }
    }

    fn rotate_qubit(&self, qubit: usize, dir: &BlochDirection<T>) -> Result<Self> {
        Ok(match self {
            PrimedState::Pure(s) => PrimedState::Pure(s.rotate_qubit(qubit, dir)?),
            PrimedState::Classical(c) => PrimedState::Classical(c.rotate_qubit(qubit, dir)?),
        })
    }

    fn computational_probabilities(&self) -> Vec<T> {
        self.computational_distribution()
    }
}

/// Clamps round-off just outside `[0, 1]`; anything further out is a bug.
pub fn clamp_probability<T: Real>(p: T) -> Result<T> {
    let tol = T::algebraic_tol();
    if p.is_nan() || p < -tol || p > T::one() + tol {
        return Err(Error::Consistency(format!("probability {p} outside [0, 1]")));
    }
    Ok(p.max(T::zero()).min(T::one()))
}

fn check_arity<T: Real, S: Measurable<T> + ?Sized>(
    state: &S,
    settings: &[PartySettings<T>],
    inputs: &[usize],
) -> Result<()> {
    let n = state.num_qubits();
    if settings.len() != n || inputs.len() != n {
        return Err(Error::arg(format!(
            "state has {n} qubits but {} settings and {} inputs were given",
            settings.len(),
            inputs.len()
        )));
    }
    for (s, &x) in settings.iter().zip(inputs) {
        s.check_input(x)?;
    }
    Ok(())
}

/// `Tr[ρ ⊗ᵢ Πᵢ]`, evaluated by building the product projector explicitly.
pub fn joint_probability<T: Real, S: Measurable<T> + ?Sized>(
    state: &S,
    settings: &[PartySettings<T>],
    inputs: &[usize],
    outcomes: &[Outcome],
) -> Result<T> {
    check_arity(state, settings, inputs)?;
    if outcomes.len() != inputs.len() {
        return Err(Error::arg("one outcome per party is required"));
    }
    let limits = Limits::default();
    let mut op: Option<CMatrix<T>> = None;
    for ((s, &x), &o) in settings.iter().zip(inputs).zip(outcomes) {
        let pi = s.projector(x, o).matrix().clone();
        op = Some(match op {
            None => pi,
            Some(acc) => tensor_product_with(&acc, &pi, &limits)?,
        });
    }
    let op = op.expect("at least one party");
    clamp_probability(state.expectation_of(&op)?)
}

/// All outcome probabilities for one input tuple, obtained by rotating each
/// qubit's measurement basis onto the computational basis.
///
/// Index bit `i` (party 0 most significant) is the outcome index of party
/// `i`: 0 for +1, 1 for −1.
pub fn outcome_distribution<T: Real, S: Measurable<T>>(
    state: &S,
    settings: &[PartySettings<T>],
    inputs: &[usize],
) -> Result<Vec<T>> {
    check_arity(state, settings, inputs)?;
    let bases: Vec<_> = settings
        .iter()
        .zip(inputs)
        .map(|(s, &x)| s.effective_direction(x))
        .collect();
    state
        .rotated_distribution(&bases)?
        .into_iter()
        .map(clamp_probability)
        .collect()
}
