use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use serde_json::{json, Map, Value};
use trace_lab_core::binomials::mu;
use trace_lab_core::construct::{sampled_trace_sizes, SampleSummary, TraceUbFamily};
use trace_lab_core::hypergraph::io::read_edge_list;
use trace_lab_core::hypergraph::{shadow_size, trace_value, vc_dimension, wp};
use trace_lab_core::sampling::DEFAULT_SEED;

use crate::output::to_json;

/// Families on at most this many vertices get their VC dimension by default.
const DEFAULT_VC_MAX_N: usize = 32;

#[derive(clap::Args)]
pub struct Args {
    /// Edge-list file.
    input: PathBuf,
    /// Exact τ(F, k).
    #[arg(long)]
    trace: Option<usize>,
    /// Exact |C(F, i)|.
    #[arg(long)]
    shadow: Option<usize>,
    /// Exact wp(F, i).
    #[arg(long)]
    wp: Option<usize>,
    /// Exact VC dimension (on by default for n <= 32).
    #[arg(long)]
    vc: bool,
    /// Number of random windows for a sampled trace.
    #[arg(long)]
    sample_trace: Option<u64>,
    /// Window fraction for sampling.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Edge exponent for the `8 n^μ` comparison; `log |F| / log n` when absent.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = crate::parse_seed)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn run(args: Args) -> anyhow::Result<ExitCode> {
    let f = read_edge_list(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let mut out = Map::new();
    out.insert("n".into(), json!(f.n()));
    out.insert("m".into(), json!(f.len()));
    out.insert("uniformity".into(), json!(f.uniformity()));
    out.insert("max_edge_size".into(), json!(f.max_edge_size()));
    out.insert("down_closed".into(), json!(f.is_down_closed()));
    if args.vc || f.n() <= DEFAULT_VC_MAX_N {
        out.insert("vc".into(), json!(vc_dimension(&f)?));
    }
    if let Some(k) = args.trace {
        out.insert("trace".into(), json!({"k": k, "value": trace_value(&f, k)?}));
    }
    if let Some(i) = args.shadow {
        out.insert("shadow".into(), json!({"i": i, "value": shadow_size(&f, i)}));
    }
    if let Some(i) = args.wp {
        out.insert("wp".into(), json!({"i": i, "value": wp(&f, i)?}));
    }
    if let Some(trials) = args.sample_trace {
        if trials == 0 {
            anyhow::bail!(trace_lab_core::Error::InvalidArgument("--sample-trace needs at least one trial".into()));
        }
        if !(args.alpha > 0.0 && args.alpha <= 1.0) {
            anyhow::bail!(trace_lab_core::Error::InvalidArgument(format!("alpha must lie in (0, 1], got {}", args.alpha)));
        }
        let window = (args.alpha * f.n() as f64).floor() as usize;
        let traces: Vec<u64> = match TraceUbFamily::from_down_closed(&f) {
            Some(compact) => compact
                .sample_windows(window, trials, args.seed)?
                .into_iter()
                .map(|(t, _)| t)
                .collect(),
            None => sampled_trace_sizes(&f, window, trials, args.seed)?,
        };
        let values: Vec<f64> = traces.iter().map(|&t| t as f64).collect();
        let summary = SampleSummary::from_values(&values);
        let n = f.n() as f64;
        let r = args.r.unwrap_or_else(|| (f.len().max(1) as f64).ln() / n.ln());
        let mut sampled = json!({
            "window": window,
            "alpha": args.alpha,
            "summary": summary,
            "max": traces.iter().max(),
        });
        if let Ok(m) = mu(r.max(1.0), args.alpha) {
            let bound = 8.0 * n.powf(m);
            sampled["r"] = json!(r);
            sampled["mu"] = json!(m);
            sampled["upper_bound"] = json!(bound);
            sampled["within_upper_bound"] = json!(summary.max <= bound);
        }
        out.insert("sampled_trace".into(), sampled);
    }
    let text = to_json(&Value::Object(out))?;
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
