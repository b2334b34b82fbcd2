use anyhow::Result;
use nsbox::circuits::OracleSpec;
use nsbox::prbases::{enumerate_pr_families, grid_search, PrBasisKind};

use super::{usage, OracleKind, Outcome, OutputArgs};
use crate::output::{emit, Table};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = OracleKind::Quantum)]
    pub oracle: OracleKind,
    /// Also search a grid with this many points per angle.
    #[arg(long)]
    pub grid: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn kind_name(k: Option<PrBasisKind>) -> &'static str {
    match k {
        Some(PrBasisKind::Computational) => "computational",
        Some(PrBasisKind::NovelQuantum) => "novel-quantum",
        Some(PrBasisKind::MirroredNovel) => "mirrored-novel",
        None => "unknown",
    }
}

pub fn run(args: Args) -> Result<Outcome> {
    let spec = match args.oracle {
        OracleKind::Quantum => OracleSpec::bipartite(true),
        OracleKind::Classical => OracleSpec::bipartite(false),
        OracleKind::Source => return usage("prbases needs an oracle, not the source state"),
    };
    let families = enumerate_pr_families(&spec)?;
    for f in &families {
        println!("family={f} certified=yes description=\"{}\"", f.describe());
    }
    let Some(points) = args.grid else {
        let mut t = Table::new(&["family", "description"]);
        for f in &families {
            t.push(vec![f.to_string().into(), f.describe().into()]);
        }
        emit(&t.render(args.output.format)?, args.output.out.as_deref(), false)?;
        return Ok(Outcome::Pass);
    };

    let report = grid_search::<f64>(&spec, points, args.output.tolerance)?;
    let off: Vec<_> = report.off_family().collect();
    let unknown = off.iter().filter(|h| h.family.is_none()).count();
    println!(
        "grid={points} evaluated={} hits={} off_listed={} unknown={unknown}",
        report.points_evaluated,
        report.hits.len(),
        off.len()
    );
    let mut by_kind = std::collections::BTreeMap::<&str, usize>::new();
    for h in &report.hits {
        *by_kind.entry(kind_name(h.family)).or_default() += 1;
    }
    for (k, n) in &by_kind {
        println!("hits[{k}]={n}");
    }
    let mut t = Table::new(&["theta", "phi_a", "phi_b", "family"]);
    for h in &report.hits {
        t.push(vec![h.theta.into(), h.phi_a.into(), h.phi_b.into(), kind_name(h.family).into()]);
    }
    emit(&t.render(args.output.format)?, args.output.out.as_deref(), false)?;
    Ok(Outcome::from_pass(unknown == 0))
}
