use anyhow::Result;
use nsbox::behavior::chsh_score;
use nsbox::linalg::Limits;
use nsbox::noise::{chsh_from_counts, fit_visibility, sample_counts, CountsTable, PLATE_ANGLES};

use super::{behavior_table, check_visibility, OracleArgs, Outcome, OutputArgs};
use crate::output::{emit, fmt9, Format, Table};
use crate::presets;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Measurement preset [default: tsirelson for the source, computational otherwise].
    #[arg(long, value_parser = presets::parse_name)]
    pub basis: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub visibility: f64,
    /// Events per setting pair; 0 reports exact probabilities instead.
    #[arg(long, default_value_t = 1_000_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report the visibility that brings the ideal CHSH value down to this one.
    #[arg(long)]
    pub fit_s: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn counts_table(c: &CountsTable) -> Table {
    let mut t = Table::new(&["x", "y", "a_deg", "b_deg", "count"]);
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    t.push(vec![
                        x.into(),
                        y.into(),
                        (PLATE_ANGLES[a] as usize).into(),
                        (PLATE_ANGLES[b] as usize).into(),
                        c.get(x, y, a, b).into(),
                    ]);
                }
            }
        }
    }
    t
}

pub fn run(args: Args) -> Result<Outcome> {
    check_visibility(args.visibility)?;
    let subject = args.oracle.bipartite_subject()?;
    let basis = args.basis.clone().unwrap_or_else(|| {
        if subject.is_source() { "tsirelson" } else { "computational" }.to_string()
    });
    let settings = subject.preset_settings(&basis)?;
    let limits = Limits::from_env()?;
    let exact = chsh_score(&subject.behavior(&settings, args.visibility, &limits)?)?;

    if let Some(target) = args.fit_s {
        let ideal = chsh_score(&subject.behavior(&settings, 1.0, &limits)?)?;
        println!("fitted_visibility={}", fmt9(fit_visibility(target, ideal)?));
    }

    if args.shots == 0 {
        println!(
            "oracle={} basis={basis} visibility={} mode=exact S={}",
            subject.label(),
            fmt9(args.visibility),
            fmt9(exact)
        );
        let b = subject.behavior(&settings, args.visibility, &limits)?;
        emit(&behavior_table(&b).render(args.output.format)?, args.output.out.as_deref(), false)?;
        return Ok(Outcome::Pass);
    }

    let b = subject.behavior(&settings, args.visibility, &limits)?;
    let counts = sample_counts(&b, args.shots, args.seed)?;
    let (s, stderr) = chsh_from_counts::<f64>(&counts)?;
    println!(
        "oracle={} basis={basis} visibility={} shots={} seed={} S={} stderr={} S_exact={}",
        subject.label(),
        fmt9(args.visibility),
        args.shots,
        args.seed,
        fmt9(s),
        fmt9(stderr),
        fmt9(exact)
    );
    let text = match args.output.format {
        Format::Csv => counts.to_csv_string(),
        Format::Json => counts_table(&counts).render(Format::Json)?,
    };
    emit(&text, args.output.out.as_deref(), false)?;
    Ok(Outcome::Pass)
}
