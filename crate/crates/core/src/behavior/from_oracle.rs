use rayon::prelude::*;

use super::table::{digits, Behavior};
use crate::circuits::{cnot_circuit, run_oracle, run_with_free_inputs, OracleSpec};
use crate::error::{Error, Result};
use crate::linalg::Limits;
use crate::measurement::{outcome_distribution, BlochDirection, Measurable, PartySettings};
use crate::scalar::Real;

/// Behavior of a family of states prepared per input tuple and measured
/// with `settings`. Rows are evaluated in parallel.
pub fn behavior_from_states<T, S, F>(settings: &[PartySettings<T>], prepare: F) -> Result<Behavior<T>>
where
    T: Real,
    S: Measurable<T>,
    F: Fn(&[u8]) -> Result<S> + Sync,
{
    let inputs: Vec<usize> = settings.iter().map(|s| s.inputs()).collect();
    let outputs = vec![2usize; settings.len()];
    let rows: usize = inputs.iter().product();
    let table: Vec<Vec<T>> = (0..rows)
        .into_par_iter()
        .map(|r| {
            let x = digits(r, &inputs);
            let bits: Vec<u8> = x.iter().map(|&v| v as u8).collect();
            let state = prepare(&bits)?;
            outcome_distribution(&state, settings, &x)
        })
        .collect::<Result<_>>()?;
    Behavior::new(inputs, outputs, table.concat())
}

/// Same state for every input tuple (e.g. a shared entangled pair).
pub fn behavior_from_shared_state<T: Real, S: Measurable<T> + Clone + Sync>(
    state: &S,
    settings: &[PartySettings<T>],
) -> Result<Behavior<T>> {
    behavior_from_states(settings, |_| Ok(state.clone()))
}

/// Runs the oracle for every input tuple and measures its primed output.
pub fn behavior_from_oracle<T: Real>(
    spec: &OracleSpec,
    settings: &[PartySettings<T>],
) -> Result<Behavior<T>> {
    behavior_from_oracle_with_limits(spec, settings, &Limits::default())
}

pub fn behavior_from_oracle_with_limits<T: Real>(
    spec: &OracleSpec,
    settings: &[PartySettings<T>],
    limits: &Limits,
) -> Result<Behavior<T>> {
    check_oracle_settings(spec, settings)?;
    limits.check_parties(spec.parties())?;
    behavior_from_states(settings, |bits| run_oracle(spec, bits, limits))
}

pub(crate) fn check_oracle_settings<T: Real>(
    spec: &OracleSpec,
    settings: &[PartySettings<T>],
) -> Result<()> {
    if settings.len() != spec.parties() {
        return Err(Error::arg(format!(
            "{spec} has {} primed registers but {} settings were given",
            spec.parties(),
            settings.len()
        )));
    }
    if settings.iter().any(|s| s.inputs() != 2) {
        return Err(Error::arg("oracle inputs are bits: each party needs two settings"));
    }
    Ok(())
}

/// CNOT with Alice free to prepare her control in `|x⟩`. Both parties
/// read out in the computational basis; Bob's input is ignored.
pub fn signaling_cnot_behavior<T: Real>() -> Result<Behavior<T>> {
    let circuit = cnot_circuit();
    let z = PartySettings::same_for_both(BlochDirection::z());
    behavior_from_states(&[z.clone(), z], |bits| {
        run_with_free_inputs::<T>(&circuit, &[bits[0], 0])
    })
}
