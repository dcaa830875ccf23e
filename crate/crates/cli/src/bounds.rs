use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use trace_lab_core::binomials::{lambda_br, mu};
use trace_lab_core::decompose::{trace_tau_lower, TraceLowerBound};

use crate::output::{fmt_float, to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
pub struct Args {
    /// Vertex counts, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    n: Vec<usize>,
    /// Edge exponents, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<f64>,
    /// Window fractions, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct Row {
    n: usize,
    r: f64,
    alpha: f64,
    mu: f64,
    lambda: f64,
    /// `λ r`, the exponent of the Bollobás-Radcliffe lower bound.
    lower_exponent: f64,
    /// `μ + log_n 8`, the exponent of the `8 n^μ` construction.
    upper_exponent: f64,
    trace_lower: TraceLowerBound,
}

pub const HEADER: &str = "n,r,alpha,mu,lambda,lower_exponent,upper_exponent";

pub fn run(args: Args) -> anyhow::Result<ExitCode> {
    let mut rows = Vec::new();
    for &n in &args.n {
        for &r in &args.r {
            for &alpha in &args.alpha {
                let m = mu(r, alpha)?;
                let lambda = lambda_br(alpha)?;
                rows.push(Row {
                    n,
                    r,
                    alpha,
                    mu: m,
                    lambda,
                    lower_exponent: lambda * r,
                    upper_exponent: m + 3.0 / (n as f64).log2(),
                    trace_lower: trace_tau_lower(n, r, alpha)?,
                });
            }
        }
    }
    let text = match args.format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut out = format!("{HEADER}\n");
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.n,
                    fmt_float(row.r),
                    fmt_float(row.alpha),
                    fmt_float(row.mu),
                    fmt_float(row.lambda),
                    fmt_float(row.lower_exponent),
                    fmt_float(row.upper_exponent),
                )?;
            }
            out
        }
    };
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
