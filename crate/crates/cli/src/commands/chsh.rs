use anyhow::Result;
use nsbox::behavior::{chsh_score, locality_classify, no_signaling_check, Locality};
use nsbox::linalg::Limits;

use super::{check_visibility, OracleArgs, Outcome, OutputArgs};
use crate::output::{emit, fmt9, Table};
use crate::presets;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Measurement preset; repeat to evaluate several.
    #[arg(long, value_parser = presets::parse_name, default_value = "computational")]
    pub basis: Vec<String>,
    /// Weight of the ideal state against white noise.
    #[arg(long, default_value_t = 1.0)]
    pub visibility: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn locality_name(l: Locality) -> &'static str {
    match l {
        Locality::Local => "local",
        Locality::QuantumCompatible => "quantum",
        Locality::BeyondQuantum => "beyond-quantum",
    }
}

pub fn run(args: Args) -> Result<Outcome> {
    check_visibility(args.visibility)?;
    let subject = args.oracle.bipartite_subject()?;
    let limits = Limits::from_env()?;
    let mut table = Table::new(&["oracle", "basis", "visibility", "S", "chsh_max", "class"]);
    for basis in &args.basis {
        let settings = subject.preset_settings(basis)?;
        let b = subject.behavior(&settings, args.visibility, &limits)?;
        let s = chsh_score(&b)?;
        let ns = no_signaling_check(&b, args.output.tolerance);
        let class = if ns.passed {
            let c = locality_classify(&b, args.output.tolerance)?;
            (c.chsh_max, locality_name(c.classification))
        } else {
            (f64::NAN, "signaling")
        };
        println!(
            "oracle={} basis={basis} S={} chsh_max={} class={}",
            subject.label(),
            fmt9(s),
            fmt9(class.0),
            class.1
        );
        table.push(vec![
            subject.label().into(),
            basis.as_str().into(),
            args.visibility.into(),
            s.into(),
            class.0.into(),
            class.1.into(),
        ]);
    }
    emit(&table.render(args.output.format)?, args.output.out.as_deref(), false)?;
    Ok(Outcome::Pass)
}
