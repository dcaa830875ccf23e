use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::ValueEnum;
use serde_json::{json, Value};
use trace_lab_core::construct::{
    build_sparse_kk_extremal, build_trace_ub_family, verify_shadow_upper, verify_wp_upper,
    ConstructionSpec, WpMode, DEFAULT_MAX_RETRIES, EXACT_WP_MAX_N,
};
use trace_lab_core::decompose::trace_tau_lower;
use trace_lab_core::hypergraph::enumerate::binomial_u128;
use trace_lab_core::hypergraph::io::write_edge_list;
use trace_lab_core::sampling::{derive_seed, DEFAULT_SEED};
use trace_lab_core::{Error, Hypergraph};

use crate::output::write_json;

/// Stream offsets of the verification samplers, apart from the build streams.
const WP_STREAM: u64 = 1 << 40;
const TRACE_STREAM: u64 = 1 << 41;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Union of k-cliques on random x-sets.
    SparseKk,
    /// Union of power sets of random x-sets.
    TraceUb,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    alpha: f64,
    /// Clique size (sparse-kk).
    #[arg(long)]
    k: Option<usize>,
    /// Random set size; derived for trace-ub when absent.
    #[arg(long)]
    x: Option<usize>,
    /// Number of random sets; derived when absent.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = crate::parse_seed)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: u32,
    /// Allow desk-scale parameters outside the asymptotic regime.
    #[arg(long)]
    relaxed: bool,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Random windows for the sampled wp check (sparse-kk, n > 24).
    #[arg(long, default_value_t = 10_000)]
    wp_trials: u64,
    /// Random windows for the sampled trace check (trace-ub).
    #[arg(long, default_value_t = 10_000)]
    trace_trials: u64,
    /// Write only the report.
    #[arg(long)]
    no_family: bool,
}

impl Args {
    fn spec(&self) -> ConstructionSpec {
        let mut spec = match self.mode {
            Mode::SparseKk => {
                ConstructionSpec::sparse_kk(self.n, self.r, self.alpha, self.k.unwrap_or(0), self.x.unwrap_or(0))
            }
            Mode::TraceUb => ConstructionSpec::trace_ub(self.n, self.r, self.alpha),
        };
        spec.k = self.k;
        spec.x = self.x;
        spec.ell = self.ell;
        spec.with_seed(self.seed)
            .with_max_retries(self.max_retries)
            .relaxed(self.relaxed)
    }
}

fn write_family(dir: &Path, f: &Hypergraph) -> anyhow::Result<()> {
    let path = dir.join("family.txt");
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_edge_list(f, BufWriter::new(file)).with_context(|| format!("writing {}", path.display()))
}

pub fn run(args: Args) -> anyhow::Result<ExitCode> {
    if args.mode == Mode::SparseKk && (args.k.is_none() || args.x.is_none()) {
        return Err(Error::InvalidArgument("--mode sparse-kk needs --k and --x".into()).into());
    }
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let spec = args.spec();
    let report_path = args.out_dir.join("report.json");
    let built = match args.mode {
        Mode::SparseKk => sparse_kk(&args, &spec),
        Mode::TraceUb => trace_ub(&args, &spec),
    };
    match built {
        Ok(report) => {
            write_json(&report_path, &report)?;
            println!("wrote {}", report_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::ConstructionFailure {
            attempts,
            detail,
            histogram,
        }) => {
            let report = json!({
                "mode": args.mode.to_possible_value().map(|v| v.get_name().to_owned()),
                "status": "failed",
                "spec": spec,
                "attempts": attempts,
                "detail": detail,
                "histogram": histogram,
            });
            write_json(&report_path, &report)?;
            Err(Error::ConstructionFailure {
                attempts,
                detail,
                histogram,
            })
            .with_context(|| format!("failure report in {}", report_path.display()))
        }
        Err(e) => Err(e.into()),
    }
}

fn sparse_kk(args: &Args, spec: &ConstructionSpec) -> Result<Value, Error> {
    let report = build_sparse_kk_extremal(spec)?;
    if !args.no_family {
        write_family(&args.out_dir, &report.family).map_err(|e| Error::Io(std::io::Error::other(format!("{e:#}"))))?;
    }
    let shadows = (0..=report.k)
        .map(|i| verify_shadow_upper(&report, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mode = if spec.n <= EXACT_WP_MAX_N {
        WpMode::Exact
    } else {
        WpMode::Sample {
            trials: args.wp_trials,
        }
    };
    let wp = verify_wp_upper(&report, mode, derive_seed(spec.seed, WP_STREAM))?;
    let cliques = binomial_u128(report.x as u64, report.k as u64) as u64;
    Ok(json!({
        "mode": "sparse-kk",
        "status": "ok",
        "spec": spec,
        "relaxed": report.relaxed,
        "k": report.k,
        "x": report.x,
        "ell": report.ell,
        "family_size": report.family.len(),
        "untrimmed_size": report.untrimmed_size,
        "target_size": report.target_size,
        "edge_disjoint": report.untrimmed_size == report.ell as u64 * cliques,
        "e1_holds": report.e1_holds,
        "max_pairwise_intersection": report.max_pairwise_intersection,
        "intersection_histogram": report.intersection_histogram,
        "retries_used": report.retries_used,
        "attempt_seed": report.attempt_seed,
        "shadow_checks": shadows,
        "wp": wp,
    }))
}

fn trace_ub(args: &Args, spec: &ConstructionSpec) -> Result<Value, Error> {
    let report = build_trace_ub_family(spec)?;
    if !args.no_family {
        let f = report.family().to_hypergraph()?;
        write_family(&args.out_dir, &f).map_err(|e| Error::Io(std::io::Error::other(format!("{e:#}"))))?;
    }
    let stats = report.sample_trace_statistics(args.trace_trials, derive_seed(spec.seed, TRACE_STREAM))?;
    let lower = trace_tau_lower(spec.n, spec.r, spec.alpha)?;
    Ok(json!({
        "mode": "trace-ub",
        "status": "ok",
        "spec": spec,
        "mu": report.mu,
        "x": report.x,
        "ell": report.ell,
        "family_size": report.family_size,
        "target_size": report.target_size,
        "e1_holds": report.e1_holds,
        "retries_used": report.retries_used,
        "attempt_seed": report.attempt_seed,
        "size_per_attempt": report.size_per_attempt,
        "n_mu": report.n_mu(),
        "sampled": stats,
        "trace_lower": lower,
        "sandwich_holds": lower.bound <= stats.max_trace as f64 && stats.max_trace_ok,
    }))
}
