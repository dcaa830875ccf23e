use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use trace_lab_core::oracle::{run_property_suite, OracleBudget};
use trace_lab_core::sampling::DEFAULT_SEED;

use crate::output::write_json;

#[derive(clap::Args)]
pub struct Args {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = OracleBudget::default().max_n)]
    max_n: usize,
    #[arg(long, default_value_t = OracleBudget::default().max_m)]
    max_m: usize,
    /// Search nodes allowed to one exact τ computation.
    #[arg(long, default_value_t = OracleBudget::default().max_families)]
    max_families: u64,
    /// Seconds.
    #[arg(long, default_value_t = OracleBudget::default().time_limit.as_secs())]
    time_limit: u64,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = crate::parse_seed)]
    seed: u64,
    /// JSON report file.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Where failing instances are written.
    #[arg(long, default_value = "witnesses")]
    witness_dir: PathBuf,
}

pub fn run(args: Args) -> anyhow::Result<ExitCode> {
    let budget = OracleBudget {
        max_n: args.max_n,
        max_m: args.max_m,
        max_families: args.max_families,
        time_limit: Duration::from_secs(args.time_limit),
    };
    let reports = run_property_suite(&args.suite, &budget, args.seed)?;
    let mut failed = 0;
    for (idx, report) in reports.iter().enumerate() {
        let status = if report.pass { "PASS" } else { "FAIL" };
        let partial = if report.partial { " (partial)" } else { "" };
        match (&report.witness, report.pass) {
            (Some(witness), false) => {
                failed += 1;
                fs::create_dir_all(&args.witness_dir)
                    .with_context(|| format!("creating {}", args.witness_dir.display()))?;
                let path = args.witness_dir.join(format!("{idx:03}-{}.txt", report.property));
                fs::write(&path, witness).with_context(|| format!("writing {}", path.display()))?;
                println!("{status} {}{partial} witness: {}", report.property, path.display());
            }
            _ => println!("{status} {}{partial}", report.property),
        }
    }
    if let Some(path) = &args.output {
        write_json(path, &reports)?;
    }
    println!("{} properties, {failed} failed", reports.len());
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
