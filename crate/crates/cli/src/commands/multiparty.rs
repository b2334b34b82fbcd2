use anyhow::Result;
use nsbox::behavior::{multiparty_box_check_with, no_signaling_check};
use nsbox::linalg::Limits;

use super::{behavior_table, usage, OracleArgs, Outcome, OutputArgs, Subject};
use crate::output::{emit, fmt9};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: Args) -> Result<Outcome> {
    if args.oracle.box_fn.is_none() && args.oracle.parties.is_none() {
        return usage("multiparty needs --box or --parties");
    }
    let Subject::Oracle(spec) = args.oracle.subject()? else {
        return usage("multiparty needs an oracle, not the source state");
    };
    let subject = Subject::Oracle(spec);
    let settings = subject.preset_settings("computational")?;
    let b = subject.behavior(&settings, 1.0, &Limits::from_env()?)?;
    let tol = args.output.tolerance;
    let check = multiparty_box_check_with(&b, spec.box_function(), tol)?;
    let ns = no_signaling_check(&b, tol);
    println!(
        "oracle={spec} parties={} box={} box_check={} max_deviation={} max_marginal_deviation={} no_signaling={}",
        spec.parties(),
        spec.box_function(),
        if check.holds { "pass" } else { "FAIL" },
        fmt9(check.max_deviation),
        fmt9(check.max_marginal_deviation),
        if ns.passed { "pass" } else { "FAIL" },
    );
    emit(&behavior_table(&b).render(args.output.format)?, args.output.out.as_deref(), false)?;
    Ok(Outcome::from_pass(check.holds && ns.passed))
}
