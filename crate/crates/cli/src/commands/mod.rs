pub mod chsh;
pub mod dump;
pub mod experiment;
pub mod multiparty;
pub mod nosig;
pub mod prbases;
pub mod sweep;

use std::path::PathBuf;

use anyhow::Result;
use clap::ValueEnum;
use nsbox::behavior::{behavior_from_oracle_with_limits, Behavior};
use nsbox::circuits::{BoxFunction, OracleSpec};
use nsbox::linalg::Limits;
use nsbox::measurement::PartySettings;
use nsbox::noise::{noisy_oracle_behavior, noisy_state_behavior, source_state};

use crate::output::Format;
use crate::presets;

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    CheckFailed,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::CheckFailed
        }
    }
}

/// Invalid combination of otherwise well-formed flags.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Unitary oracle with an entangled primed register.
    Quantum,
    /// Same circuit with stochastic gates.
    Classical,
    /// Two-photon source state shared directly, without an oracle.
    Source,
}

#[derive(Debug, clap::Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = OracleKind::Quantum)]
    pub oracle: OracleKind,
    /// Tripartite target function: xyz, x(y+z) or svetlichny.
    #[arg(long = "box", value_parser = parse_box)]
    pub box_fn: Option<BoxFunction>,
    /// Number of parties for the n-party xyz oracle.
    #[arg(long)]
    pub parties: Option<usize>,
}

fn parse_box(s: &str) -> Result<BoxFunction, String> {
    s.parse().map_err(|e: nsbox::Error| e.to_string())
}

/// What the settings are applied to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Subject {
    Oracle(OracleSpec),
    Source,
}

impl Subject {
    pub fn parties(&self) -> usize {
        match self {
            Subject::Oracle(spec) => spec.parties(),
            Subject::Source => 2,
        }
    }

    pub fn is_source(&self) -> bool {
        matches!(self, Subject::Source)
    }

    pub fn label(&self) -> String {
        match self {
            Subject::Oracle(spec) => spec.to_string(),
            Subject::Source => "source".into(),
        }
    }

    /// Behavior under `settings` after mixing with white noise of weight
    /// `1 − visibility`.
    pub fn behavior(
        &self,
        settings: &[PartySettings<f64>],
        visibility: f64,
        limits: &Limits,
    ) -> Result<Behavior<f64>> {
        Ok(match self {
            Subject::Oracle(spec) if visibility == 1.0 => {
                behavior_from_oracle_with_limits(spec, settings, limits)?
            }
            Subject::Oracle(spec) => {
                if spec.parties() > limits.max_qubits {
                    return Err(nsbox::Error::Capacity {
                        what: "party count",
                        requested: spec.parties(),
                        cap: limits.max_qubits,
                    }
                    .into());
                }
                noisy_oracle_behavior(spec, settings, visibility)?
            }
            Subject::Source => {
                noisy_state_behavior(&source_state().to_density_matrix(), settings, visibility)?
            }
        })
    }

    /// Settings for every party from a named preset.
    pub fn preset_settings(&self, name: &str) -> Result<Vec<PartySettings<f64>>> {
        presets::get(name)?.settings(self.parties(), self.is_source())
    }
}

impl OracleArgs {
    pub fn subject(&self) -> Result<Subject> {
        let quantum = match self.oracle {
            OracleKind::Source => {
                if self.box_fn.is_some() || self.parties.is_some() {
                    return usage("--oracle source is bipartite; drop --box/--parties");
                }
                return Ok(Subject::Source);
            }
            OracleKind::Quantum => true,
            OracleKind::Classical => false,
        };
        let spec = match (self.box_fn, self.parties) {
            (None, None) => OracleSpec::bipartite(quantum),
            (Some(f), None | Some(3)) => OracleSpec::tripartite(f, quantum),
            (Some(_), Some(n)) => return usage(format!("--box needs three parties, got --parties {n}")),
            (None, Some(2)) => OracleSpec::bipartite(quantum),
            (None, Some(n)) => OracleSpec::nparty_xyz(n, quantum)?,
        };
        Ok(Subject::Oracle(spec))
    }

    /// Like [`OracleArgs::subject`] but rejecting anything but two parties.
    pub fn bipartite_subject(&self) -> Result<Subject> {
        let s = self.subject()?;
        if s.parties() != 2 {
            return usage("this command needs a bipartite oracle");
        }
        Ok(s)
    }
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the result table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute tolerance for equality checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

pub fn check_visibility(v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return usage(format!("--visibility must lie in [0, 1], got {v}"));
    }
    Ok(())
}

/// Behavior in long form: one row per (inputs, outputs) cell.
pub fn behavior_table(b: &Behavior<f64>) -> crate::output::Table {
    let n = b.parties();
    let mut cols: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    cols.extend((1..=n).map(|k| format!("a{k}")));
    cols.push("p".into());
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = crate::output::Table::new(&col_refs);
    for row in 0..b.num_input_tuples() {
        let xs = b.input_tuple(row);
        for col in 0..b.num_output_tuples() {
            let outs = b.output_tuple(col);
            let mut cells: Vec<crate::output::Cell> = xs.iter().map(|&x| x.into()).collect();
            cells.extend(outs.iter().map(|&a| a.into()));
            cells.push(b.p(&xs, &outs).into());
            t.push(cells);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(oracle: OracleKind, box_fn: Option<BoxFunction>, parties: Option<usize>) -> OracleArgs {
        OracleArgs { oracle, box_fn, parties }
    }

    #[test]
    fn subject_resolution() {
        let s = args(OracleKind::Quantum, None, None).subject().unwrap();
        assert_eq!(s, Subject::Oracle(OracleSpec::bipartite(true)));
        let s = args(OracleKind::Classical, Some(BoxFunction::Svetlichny), None)
            .subject()
            .unwrap();
        assert_eq!(s.parties(), 3);
        let s = args(OracleKind::Quantum, None, Some(5)).subject().unwrap();
        assert_eq!(s.parties(), 5);
        assert!(args(OracleKind::Source, None, Some(3)).subject().is_err());
        assert!(args(OracleKind::Quantum, Some(BoxFunction::Xyz), Some(4))
            .subject()
            .is_err());
        assert!(args(OracleKind::Quantum, None, Some(1)).subject().is_err());
    }

    #[test]
    fn behavior_table_has_every_cell() {
        let t = behavior_table(&Behavior::pr_box());
        let csv = t.render(Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 17);
        assert!(csv.starts_with("x1,x2,a1,a2,p\n0,0,0,0,0.500000000\n"));
    }
}
