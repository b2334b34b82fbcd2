use std::f64::consts::PI;

use anyhow::Result;
use nsbox::behavior::{behavior_from_oracle_with_limits, chsh_score};
use nsbox::circuits::OracleSpec;
use nsbox::linalg::Limits;
use nsbox::measurement::{
    chsh_closed_form_classical_settings, chsh_closed_form_quantum, BlochDirection, PartySettings,
};
use rayon::prelude::*;

use super::{usage, OracleKind, Outcome, OutputArgs};
use crate::angles::{linspace, parse_angle_spec, AngleSpec};
use crate::output::{emit, fmt9, Table};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Oracle whose closed form fills the S_closedform column and is
    /// checked against simulation.
    #[arg(long, value_enum, default_value_t = OracleKind::Quantum)]
    pub oracle: OracleKind,
    /// Polar angle(s) shared by all settings: ANGLE or START:STOP:COUNT
    /// (radians; `pi` allowed, e.g. `pi/4`). Defaults to `--grid` points on [0, pi].
    #[arg(long, value_parser = parse_angle_spec)]
    pub theta: Option<AngleSpec>,
    /// Azimuth(s) shared by all settings, same syntax as --theta.
    #[arg(long, value_parser = parse_angle_spec, default_value = "0")]
    pub phi: AngleSpec,
    /// Number of polar grid points when --theta is absent.
    #[arg(long, default_value_t = 181)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

struct Row {
    theta: f64,
    phi: f64,
    quantum: f64,
    classical: f64,
    closed: f64,
}

fn evaluate(theta: f64, phi: f64, quantum_closed: bool, limits: &Limits) -> Result<Row> {
    let settings = PartySettings::same_for_both(BlochDirection::new(theta, phi)?);
    let both = [settings.clone(), settings.clone()];
    let q = chsh_score(&behavior_from_oracle_with_limits(&OracleSpec::bipartite(true), &both, limits)?)?;
    let c = chsh_score(&behavior_from_oracle_with_limits(&OracleSpec::bipartite(false), &both, limits)?)?;
    let closed = if quantum_closed {
        chsh_closed_form_quantum(&settings, &settings)?
    } else {
        chsh_closed_form_classical_settings(&settings, &settings)?
    };
    Ok(Row { theta, phi, quantum: q, classical: c, closed: closed.abs() })
}

pub fn run(args: Args) -> Result<Outcome> {
    let quantum_closed = match args.oracle {
        OracleKind::Quantum => true,
        OracleKind::Classical => false,
        OracleKind::Source => return usage("sweep compares the oracles; --oracle source is not supported"),
    };
    let thetas = match args.theta {
        Some(AngleSpec(t)) => t,
        None => linspace(0.0, PI, args.grid).map_err(super::UsageError)?,
    };
    let limits = Limits::from_env()?;
    let points: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| args.phi.0.iter().map(move |&p| (t, p)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(t, p)| evaluate(t, p, quantum_closed, &limits))
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(&["theta", "phi", "S_quantum", "S_classical", "S_closedform"]);
    let mut worst = 0.0f64;
    for r in &rows {
        let simulated = if quantum_closed { r.quantum } else { r.classical };
        worst = worst.max((simulated - r.closed).abs());
        table.push(vec![r.theta.into(), r.phi.into(), r.quantum.into(), r.classical.into(), r.closed.into()]);
    }
    emit(&table.render(args.output.format)?, args.output.out.as_deref(), true)?;
    let pass = worst <= args.output.tolerance;
    eprintln!(
        "points={} max_closed_form_deviation={} {}",
        rows.len(),
        fmt9(worst),
        if pass { "pass" } else { "FAIL" }
    );
    Ok(Outcome::from_pass(pass))
}
