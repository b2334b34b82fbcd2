//! Behaviors (conditional probability tables) and their analysis:
//! no-signaling, CHSH, locality, PR-box and multipartite box identities.

mod analysis;
mod from_oracle;
mod table;

pub use analysis::{
    chsh_expression, chsh_max, chsh_score, correlator, is_pr_box, locality_classify,
    locality_classify_with_band, multiparty_box_check, multiparty_box_check_with,
    no_signaling_check, BoxCheck, Locality, LocalityClass, NsReport, SignalingWitness,
    CLASSIFICATION_BAND,
};
pub use from_oracle::{
    behavior_from_oracle, behavior_from_oracle_with_limits, behavior_from_shared_state,
    behavior_from_states, signaling_cnot_behavior,
};
pub use table::Behavior;
