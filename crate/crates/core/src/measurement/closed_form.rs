//! Closed-form outcome probabilities and CHSH values for the bipartite
//! oracle states, as functions of the measurement directions.

use super::bloch::{Outcome, PartySettings};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn parity_sign<T: Real>(x: u8, y: u8) -> T {
    if x & y == 1 {
        -T::one()
    } else {
        T::one()
    }
}

fn outcome_value<T: Real>(o: Outcome) -> T {
    T::lit(f64::from(o.sign()))
}

/// Correlator `⟨a_x b_y⟩ = a₁b₁ − s a₂b₂ + s a₃b₃` with `s = (−1)^{xy}`.
pub fn correlator_quantum<T: Real>(x: u8, y: u8, a: [T; 3], b: [T; 3]) -> T {
    let s = parity_sign::<T>(x, y);
    a[0] * b[0] - s * a[1] * b[1] + s * a[2] * b[2]
}

/// Correlator `(−1)^{xy} a₃ b₃` of the classically correlated state.
pub fn correlator_classical<T: Real>(x: u8, y: u8, a: [T; 3], b: [T; 3]) -> T {
    parity_sign::<T>(x, y) * a[2] * b[2]
}

/// `p(a,b|x,y) = ¼{1 + ab(a₁b₁ − (−1)^{xy} a₂b₂ + (−1)^{xy} a₃b₃)}`.
pub fn closed_form_prob_quantum<T: Real>(
    x: u8,
    y: u8,
    a: Outcome,
    b: Outcome,
    dir_a: [T; 3],
    dir_b: [T; 3],
) -> T {
    let ab = outcome_value::<T>(a) * outcome_value(b);
    T::lit(0.25) * (T::one() + ab * correlator_quantum(x, y, dir_a, dir_b))
}

/// `p(a,b|x,y) = ¼[1 + (−1)^{xy} ab a₃b₃]`.
pub fn closed_form_prob_classical<T: Real>(
    x: u8,
    y: u8,
    a: Outcome,
    b: Outcome,
    dir_a: [T; 3],
    dir_b: [T; 3],
) -> T {
    let ab = outcome_value::<T>(a) * outcome_value(b);
    T::lit(0.25) * (T::one() + ab * correlator_classical(x, y, dir_a, dir_b))
}

fn check_two_inputs<T: Real>(alice: &PartySettings<T>, bob: &PartySettings<T>) -> Result<()> {
    if alice.inputs() != 2 || bob.inputs() != 2 {
        return Err(Error::arg("CHSH needs exactly two inputs per party"));
    }
    Ok(())
}

fn chsh_with<T: Real>(
    alice: &PartySettings<T>,
    bob: &PartySettings<T>,
    correlator: fn(u8, u8, [T; 3], [T; 3]) -> T,
) -> Result<T> {
    check_two_inputs(alice, bob)?;
    let mut s = T::zero();
    for x in 0..2u8 {
        for y in 0..2u8 {
            let e = correlator(
                x,
                y,
                alice.effective_vector(x as usize),
                bob.effective_vector(y as usize),
            );
            s += parity_sign::<T>(x, y) * e;
        }
    }
    Ok(s)
}

/// Signed CHSH expression `E₀₀ + E₀₁ + E₁₀ − E₁₁` of the entangled oracle
/// state; outcome-sign flips are folded into the directions.
pub fn chsh_closed_form_quantum<T: Real>(
    alice: &PartySettings<T>,
    bob: &PartySettings<T>,
) -> Result<T> {
    chsh_with(alice, bob, correlator_quantum)
}

/// `(cosθ⁰_a + cosθ¹_a)(cosθ⁰_b + cosθ¹_b)`; azimuths never enter.
pub fn chsh_closed_form_classical<T: Real>(thetas: [T; 4]) -> T {
    let [a0, a1, b0, b1] = thetas;
    (a0.cos() + a1.cos()) * (b0.cos() + b1.cos())
}

/// Classical closed form evaluated on settings (effective polar angles).
pub fn chsh_closed_form_classical_settings<T: Real>(
    alice: &PartySettings<T>,
    bob: &PartySettings<T>,
) -> Result<T> {
    check_two_inputs(alice, bob)?;
    Ok(chsh_closed_form_classical([
        alice.effective_direction(0).theta(),
        alice.effective_direction(1).theta(),
        bob.effective_direction(0).theta(),
        bob.effective_direction(1).theta(),
    ]))
}

/// `S(λ) = 2 + 2cos²λ`: all four polar angles equal `λ`, all azimuths zero.
pub fn chsh_lambda_curve<T: Real>(lambda: T) -> T {
    let c = lambda.cos();
    T::lit(2.0) + T::lit(2.0) * c * c
}
