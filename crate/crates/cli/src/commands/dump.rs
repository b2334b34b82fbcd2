use anyhow::Result;
use nsbox::linalg::Limits;

use super::{behavior_table, check_visibility, OracleArgs, Outcome, OutputArgs};
use crate::output::emit;
use crate::presets;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Measurement preset; parties beyond the second use Alice's settings.
    #[arg(long, value_parser = presets::parse_name, default_value = "computational")]
    pub basis: String,
    #[arg(long, default_value_t = 1.0)]
    pub visibility: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: Args) -> Result<Outcome> {
    check_visibility(args.visibility)?;
    let subject = args.oracle.subject()?;
    let settings = subject.preset_settings(&args.basis)?;
    let b = subject.behavior(&settings, args.visibility, &Limits::from_env()?)?;
    emit(&behavior_table(&b).render(args.output.format)?, args.output.out.as_deref(), true)?;
    Ok(Outcome::Pass)
}
