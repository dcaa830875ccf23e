//! `trace-lab`: builds the randomized extremal families, tabulates the
//! exponents, runs the property suites and analyzes edge-list files.
//!
//! Exit codes: 0 success, 1 a property failed, 2 usage or input error,
//! 3 a construction exhausted its retries.

mod analyze;
mod bounds;
mod construct;
mod output;
mod verify;

use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use trace_lab_core::Error;

#[derive(Parser)]
#[command(name = "trace-lab", version, about = "Trace and shadow bounds for set systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a randomized extremal family and write it with a JSON report.
    Construct(construct::Args),
    /// Tabulate the exponents over a parameter grid.
    Bounds(bounds::Args),
    /// Run a property suite.
    Verify(verify::Args),
    /// Exact and sampled statistics of an edge-list file.
    Analyze(analyze::Args),
}

/// Parses `0x`-prefixed hex or decimal.
pub(crate) fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("TRACE_LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("TRACE_LAB_THREADS must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ConstructionFailure { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Construct(args) => construct::run(args),
        Command::Bounds(args) => bounds::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Analyze(args) => analyze::run(args),
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
