//! `nsbox`: command-line front end for the non-signaling box oracles.

mod angles;
mod commands;
mod output;
mod presets;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Outcome, UsageError};

#[derive(Debug, Parser)]
#[command(name = "nsbox", version, about = "Simulate oracles reproducing PR-box correlations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// CHSH value of an oracle or the source state for each measurement preset.
    Chsh(commands::chsh::Args),
    /// CHSH as a function of the measurement angles shared by all four settings.
    Sweep(commands::sweep::Args),
    /// No-signaling check over presets or random settings.
    Nosig(commands::nosig::Args),
    /// PR-basis families, optionally rediscovered by grid search.
    Prbases(commands::prbases::Args),
    /// Full-correlation box check for tripartite and n-party oracles.
    Multiparty(commands::multiparty::Args),
    /// Simulated photonic experiment: noise, sampled counts, CHSH with error bars.
    Experiment(commands::experiment::Args),
    /// Full behavior table `p(outputs | inputs)`.
    BehaviorDump(commands::dump::Args),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<nsbox::Error>() {
            return match e {
                nsbox::Error::Argument(_) | nsbox::Error::Capacity { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Chsh(a) => commands::chsh::run(a),
        Command::Sweep(a) => commands::sweep::run(a),
        Command::Nosig(a) => commands::nosig::run(a),
        Command::Prbases(a) => commands::prbases::run(a),
        Command::Multiparty(a) => commands::multiparty::run(a),
        Command::Experiment(a) => commands::experiment::run(a),
        Command::BehaviorDump(a) => commands::dump::run(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
