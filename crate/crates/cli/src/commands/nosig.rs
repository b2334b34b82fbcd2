use std::f64::consts::PI;

use anyhow::Result;
use nsbox::behavior::{no_signaling_check, signaling_cnot_behavior, NsReport};
use nsbox::linalg::Limits;
use nsbox::measurement::{BlochDirection, PartySettings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{usage, OracleArgs, Outcome, OutputArgs};
use crate::output::{emit, fmt9, Table};
use crate::presets;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Check one preset instead of random settings.
    #[arg(long, value_parser = presets::parse_name, conflicts_with = "random")]
    pub basis: Option<String>,
    /// Number of random setting draws (uniform on the sphere).
    #[arg(long, default_value_t = 100)]
    pub random: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Demonstrate signaling with a bare CNOT whose control Alice prepares freely.
    #[arg(long)]
    pub unsafe_free_inputs: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn random_party(rng: &mut ChaCha8Rng) -> Result<PartySettings<f64>> {
    let dirs = (0..2)
        .map(|_| {
            let theta = (1.0 - 2.0 * rng.random::<f64>()).clamp(-1.0, 1.0).acos();
            BlochDirection::new(theta, 2.0 * PI * rng.random::<f64>())
        })
        .collect::<nsbox::Result<Vec<_>>>()?;
    Ok(PartySettings::unsigned(dirs)?)
}

fn witness_text(r: &NsReport<f64>) -> String {
    r.worst_case.as_ref().map_or_else(
        || "none".into(),
        |w| {
            format!(
                "parties{:?}:inputs{:?}vs{:?}:outcome{:?}",
                w.subset, w.inputs.0, w.inputs.1, w.marginal_outcome
            )
        },
    )
}

fn free_inputs_demo(args: &Args) -> Result<Outcome> {
    let b = signaling_cnot_behavior::<f64>()?;
    let r = no_signaling_check(&b, args.output.tolerance);
    println!(
        "circuit=free-input-cnot max_violation={} signaling={} witness={}",
        fmt9(r.max_violation),
        if r.passed { "no" } else { "yes" },
        witness_text(&r)
    );
    let mut t = Table::new(&["circuit", "max_violation", "signaling"]);
    t.push(vec!["free-input-cnot".into(), r.max_violation.into(), (!r.passed).to_string().into()]);
    emit(&t.render(args.output.format)?, args.output.out.as_deref(), false)?;
    // The demonstration succeeds when signaling is detected.
    Ok(Outcome::from_pass(!r.passed))
}

pub fn run(args: Args) -> Result<Outcome> {
    if args.unsafe_free_inputs {
        return free_inputs_demo(&args);
    }
    let subject = args.oracle.subject()?;
    let limits = Limits::from_env()?;
    if args.basis.is_none() && args.random == 0 {
        return usage("--random must be positive");
    }
    let mut t = Table::new(&["trial", "settings", "max_violation", "passed"]);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    let mut run_one = |label: String, trial: usize, settings: Vec<PartySettings<f64>>| -> Result<()> {
        let b = subject.behavior(&settings, 1.0, &limits)?;
        let r = no_signaling_check(&b, args.output.tolerance);
        worst = worst.max(r.max_violation);
        if !r.passed {
            failures += 1;
            eprintln!("trial={trial} violation={} witness={}", fmt9(r.max_violation), witness_text(&r));
        }
        t.push(vec![trial.into(), label.into(), r.max_violation.into(), r.passed.to_string().into()]);
        Ok(())
    };
    let trials = match &args.basis {
        Some(name) => {
            run_one(name.clone(), 0, subject.preset_settings(name)?)?;
            1
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for trial in 0..args.random {
                let settings = (0..subject.parties())
                    .map(|_| random_party(&mut rng))
                    .collect::<Result<Vec<_>>>()?;
                run_one("random".into(), trial, settings)?;
            }
            args.random
        }
    };
    println!(
        "oracle={} trials={trials} max_violation={} no_signaling={}",
        subject.label(),
        fmt9(worst),
        if failures == 0 { "pass" } else { "FAIL" }
    );
    emit(&t.render(args.output.format)?, args.output.out.as_deref(), false)?;
    Ok(Outcome::from_pass(failures == 0))
}
