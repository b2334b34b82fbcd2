//! Bloch-direction measurements: trace-based probabilities and the
//! closed-form expressions for the bipartite oracle states.

mod bloch;
mod closed_form;
mod probability;

pub use bloch::{BlochDirection, Outcome, PartySettings, Sign};
pub use closed_form::{
    chsh_closed_form_classical, chsh_closed_form_classical_settings, chsh_closed_form_quantum,
    chsh_lambda_curve, closed_form_prob_classical, closed_form_prob_quantum, correlator_classical,
    correlator_quantum,
};
pub use probability::{clamp_probability, joint_probability, outcome_distribution, Measurable};
