//! Registered property suites.
//!
//! Each suite draws its instances from seeds derived from the caller's seed
//! and the suite's position in the registry, so a suite gives the same
//! reports whether it runs alone or inside `all`. Sweeps over many instances
//! are summarized in a single report that carries the first failing instance.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::naive::{
    codegree_exact, shadow_exact, trace_exact, trace_value_exact, wp_exact,
};
use super::{tau_exact, OracleBudget, VerificationReport};
use crate::binomials::{
    binom_pmf, binom_real, exp_sandwich, hypergeom_domination_violations, hypergeom_pmf,
    invert_binomial, lambda_br, mu, newton_partial_sum_bounds, sum_binom_gamma_lower,
    binom_ratio_lower,
};
use crate::construct::{
    build_sparse_kk_extremal, build_trace_ub_family, chernoff_tail_check, verify_shadow_upper,
    verify_wp_upper, BoundedSum, ConstructionSpec, TraceUbFamily, WpMode,
};
use crate::decompose::{
    ceil_snapped, collect_link_shadow_lower, heavy_tuples, heavy_vertices, regularize,
    sparse_kk_params, trace_tau_lower,
};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::enumerate::binomial_u128;
use crate::hypergraph::io::to_edge_list_string;
use crate::hypergraph::{
    downward_closure, find_separating_subset, induced, popular_layer, shadow, shadow_size,
    trace_size, trace_value, vc_dimension, wp, Hypergraph, VertexSet,
};
use crate::sampling::{derive_seed, rng_from_seed, sample_subset};

type SuiteFn = fn(&mut Ctx);

const SUITES: &[(&str, SuiteFn)] = &[
    ("sauer", sauer),
    ("kruskal-katona", kruskal_katona),
    ("regularization", regularization),
    ("heavy-vertices", heavy_vertices_suite),
    ("heavy-tuples", heavy_tuples_suite),
    ("link-shadow", link_shadow),
    ("sum-bound", sum_bound),
    ("exp-sandwich", exp_sandwich_suite),
    ("binom-ratio", binom_ratio),
    ("newton", newton),
    ("hypergeometric", hypergeometric),
    ("chernoff", chernoff),
    ("sparse-kk", sparse_kk),
    ("exponents", exponents),
    ("tau-lower", tau_lower),
    ("construction", construction),
    ("tau-exact", tau_exact_suite),
    ("differential", differential),
    ("vc", vc),
    ("separating", separating),
    ("hypergraph-invariants", hypergraph_invariants),
];

/// Every accepted suite name, `all` last.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).chain(["all"]).collect()
}

/// Runs the named suite (or `all` of them) and returns its reports.
///
/// An empty budget yields no reports.
pub fn run_property_suite(
    suite: &str,
    budget: &OracleBudget,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    let selected: Vec<(usize, SuiteFn)> = if suite == "all" {
        SUITES.iter().enumerate().map(|(i, (_, f))| (i, *f)).collect()
    } else {
        match SUITES.iter().position(|(name, _)| *name == suite) {
            Some(i) => vec![(i, SUITES[i].1)],
            None => {
                return Err(invalid(format!(
                    "unknown suite '{suite}'; expected one of {}",
                    suite_names().join(", ")
                )))
            }
        }
    };
    let mut ctx = Ctx {
        budget: *budget,
        seed,
        index: 0,
        started: Instant::now(),
        reports: Vec::new(),
    };
    if budget.is_empty() {
        return Ok(Vec::new());
    }
    for (index, run) in selected {
        ctx.index = index as u64;
        run(&mut ctx);
    }
    Ok(ctx.reports)
}

struct Ctx {
    budget: OracleBudget,
    seed: u64,
    index: u64,
    started: Instant,
    reports: Vec<VerificationReport>,
}

impl Ctx {
    fn base(&self, stream: u64) -> u64 {
        derive_seed(derive_seed(self.seed, self.index), stream)
    }

    fn expired(&self) -> bool {
        self.started.elapsed() > self.budget.time_limit
    }

    /// `max_n` capped at `cap`, or `None` below `floor`.
    fn n_range(&self, floor: usize, cap: usize) -> Option<usize> {
        let n = self.budget.max_n.min(cap);
        (n >= floor).then_some(n)
    }

    fn push(&mut self, report: VerificationReport) {
        self.reports.push(report);
    }

    fn single(&mut self, property: &str, params: Value, expected: &str, observed: Value, pass: bool, witness: impl FnOnce() -> String) {
        self.push(VerificationReport {
            property: property.into(),
            params,
            expected: expected.into(),
            observed,
            pass,
            witness: (!pass).then(witness),
            partial: false,
        });
    }

    /// Runs `count` instances in parallel, each from its own derived seed.
    fn parallel_sweep<F>(&mut self, sweep: Sweep, count: u64, stream: u64, f: F)
    where
        F: Fn(&mut ChaCha8Rng) -> Outcome + Sync,
    {
        let base = self.base(stream);
        let outcomes: Vec<Outcome> = (0..count)
            .into_par_iter()
            .map(|j| f(&mut rng_from_seed(derive_seed(base, j))))
            .collect();
        let mut sweep = sweep;
        for o in outcomes {
            sweep.absorb(o);
        }
        self.finish(sweep);
    }

    fn finish(&mut self, sweep: Sweep) {
        if sweep.checked == 0 && sweep.failures == 0 {
            return;
        }
        let mut observed = json!({
            "checked": sweep.checked,
            "failures": sweep.failures,
            "skipped": sweep.skipped,
        });
        if let (Value::Object(map), Value::Object(extra)) = (&mut observed, sweep.extra) {
            map.extend(extra);
        }
        self.push(VerificationReport {
            property: sweep.property,
            params: sweep.params,
            expected: sweep.expected,
            observed,
            pass: sweep.failures == 0,
            witness: sweep.witness,
            partial: sweep.partial,
        });
    }
}

enum Outcome {
    Skip,
    Pass,
    Fail(String),
}

impl Outcome {
    fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(witness())
        }
    }

    fn family(ok: bool, f: &Hypergraph, note: impl FnOnce() -> String) -> Self {
        Self::check(ok, || format!("# {}\n{}", note(), to_edge_list_string(f)))
    }

    fn error(e: Error, f: &Hypergraph) -> Self {
        Outcome::Fail(format!("# unexpected error: {e}\n{}", to_edge_list_string(f)))
    }
}

struct Sweep {
    property: String,
    params: Value,
    expected: String,
    checked: u64,
    failures: u64,
    skipped: u64,
    witness: Option<String>,
    partial: bool,
    extra: Value,
}

impl Sweep {
    fn new(property: &str, params: Value, expected: &str) -> Self {
        Self {
            property: property.into(),
            params,
            expected: expected.into(),
            checked: 0,
            failures: 0,
            skipped: 0,
            witness: None,
            partial: false,
            extra: json!({}),
        }
    }

    fn absorb(&mut self, o: Outcome) {
        match o {
            Outcome::Skip => self.skipped += 1,
            Outcome::Pass => self.checked += 1,
            Outcome::Fail(w) => {
                self.checked += 1;
                self.failures += 1;
                self.witness.get_or_insert(w);
            }
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.absorb(Outcome::check(ok, witness));
    }
}

fn binom(n: usize, k: usize) -> usize {
    binomial_u128(n as u64, k as u64) as usize
}

/// `m` distinct random subsets of `0..n`.
fn random_family(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Hypergraph {
    let words: Vec<u64> = sample_subset(1 << n, m, rng)
        .into_iter()
        .map(|w| w as u64)
        .collect();
    Hypergraph::from_words(n, &words).expect("n <= 64")
}

/// `m` distinct random `k`-subsets of `0..n`.
fn random_uniform(rng: &mut ChaCha8Rng, n: usize, k: usize, m: usize) -> Hypergraph {
    let all = Hypergraph::complete(n, k);
    let edges = sample_subset(all.len(), m, rng)
        .into_iter()
        .map(|i| all.edges()[i].clone());
    Hypergraph::new(n, edges).expect("valid edges")
}

fn random_window(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let size = rng.random_range(0..=n);
    let mut w = sample_subset(n, size, rng);
    w.sort_unstable();
    w
}

fn vs(vertices: &[usize]) -> VertexSet {
    VertexSet::from_vertices(vertices.iter().copied())
}

fn kk_floor(m: usize, k: usize, i: usize) -> Result<f64> {
    Ok(binom_real(invert_binomial(m as f64, k)?, i))
}

fn sauer(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(1, 12) else { return };
    let max_m = ctx.budget.max_m;
    let sweep = Sweep::new(
        "sauer-perles-shelah",
        json!({"instances": 500, "max_n": n_max, "max_k": 4}),
        "trace_value(F, k) = 2^k whenever |F| > Σ_{i<k} C(n, i)",
    );
    ctx.parallel_sweep(sweep, 500, 0, |rng| {
        let n = rng.random_range(1..=n_max);
        let k = rng.random_range(1..=n.min(4));
        let threshold: usize = (0..k).map(|i| binom(n, i)).sum();
        let hi = max_m.min(1 << n);
        if threshold >= hi {
            return Outcome::Skip;
        }
        let m = threshold + 1 + rng.random_range(0..=(hi - threshold - 1).min(threshold));
        let f = random_family(rng, n, m);
        match trace_value(&f, k) {
            Ok(v) => Outcome::family(v == 1 << k, &f, || format!("k = {k}, trace = {v}")),
            Err(e) => Outcome::error(e, &f),
        }
    });
}

fn kk_outcome(f: &Hypergraph, k: usize) -> Outcome {
    for i in 0..=k {
        let floor = match kk_floor(f.len(), k, i) {
            Ok(v) => v,
            Err(e) => return Outcome::error(e, f),
        };
        let size = shadow_size(f, i);
        if (size as f64) < floor - 1e-9 {
            return Outcome::family(false, f, || {
                format!("k = {k}, i = {i}: shadow {size} < C(y, i) = {floor}")
            });
        }
    }
    Outcome::Pass
}

fn kruskal_katona(ctx: &mut Ctx) {
    if let Some(n_max) = ctx.n_range(1, 5) {
        let mut sweep = Sweep::new(
            "kruskal-katona-exhaustive",
            json!({"max_n": n_max}),
            "|shadow(F, i)| >= C(y, i) - 1e-9 for every non-empty k-graph with |F| = C(y, k)",
        );
        'outer: for n in 1..=n_max {
            for k in 1..=n {
                let all = Hypergraph::complete(n, k);
                let count = all.len();
                for mask in 1u64..1 << count {
                    if mask.count_ones() as usize > ctx.budget.max_m {
                        continue;
                    }
                    let f = Hypergraph::new(
                        n,
                        (0..count).filter(|b| mask >> b & 1 == 1).map(|b| all.edges()[b].clone()),
                    )
                    .expect("valid edges");
                    sweep.absorb(kk_outcome(&f, k));
                }
                if ctx.expired() {
                    sweep.partial = true;
                    break 'outer;
                }
            }
        }
        ctx.finish(sweep);
    }
    if let Some(n_max) = ctx.n_range(2, 14) {
        let max_m = ctx.budget.max_m;
        let sweep = Sweep::new(
            "kruskal-katona-random",
            json!({"instances": 1000, "max_n": n_max, "max_k": 5}),
            "|shadow(F, i)| >= C(y, i) - 1e-9",
        );
        ctx.parallel_sweep(sweep, 1000, 1, |rng| {
            let n = rng.random_range(2..=n_max);
            let k = rng.random_range(1..=n.min(5));
            let m = rng.random_range(1..=binom(n, k).min(max_m).min(400));
            let f = random_uniform(rng, n, k, m);
            kk_outcome(&f, k)
        });
    }
}

fn regularization(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(2, 12) else { return };
    let max_m = ctx.budget.max_m;
    let sweep = Sweep::new(
        "regularization-guarantees",
        json!({"instances": 300, "max_n": n_max, "edges": "non-empty"}),
        "|E'|/|V'| >= |E|/|V|, every degree >= |E'|/(2|V'| log |V|), |E'| > |E|/2",
    );
    ctx.parallel_sweep(sweep, 300, 0, |rng| {
        let n = rng.random_range(2..=n_max);
        let f = if rng.random_bool(0.5) {
            let k = rng.random_range(1..=n.min(4));
            let m = rng.random_range(1..=binom(n, k).min(max_m).min(200));
            random_uniform(rng, n, k, m)
        } else {
            // the guarantees need non-empty edges: {∅} alone never reaches the degree floor
            let m = rng.random_range(1..=((1usize << n) - 1).min(max_m).min(200));
            let words: Vec<u64> = sample_subset((1 << n) - 1, m, rng)
                .into_iter()
                .map(|w| w as u64 + 1)
                .collect();
            Hypergraph::from_words(n, &words).expect("n <= 64")
        };
        match regularize(&f) {
            Ok(r) => {
                let g = r.guarantees();
                let partition = r.kept.len() + r.removed_order.len() == n;
                Outcome::family(g.all() && partition, &f, || format!("{g:?}"))
            }
            Err(e) => Outcome::error(e, &f),
        }
    });

    let star = Hypergraph::from_edge_lists(5, &[[0, 1], [0, 2], [0, 3], [0, 4]]).unwrap();
    let mut isolated_edges = Hypergraph::complete(4, 2).edge_vectors();
    isolated_edges.push(vec![4]);
    let isolated = Hypergraph::from_edge_lists(6, &isolated_edges).unwrap();
    let cases: [(&str, Hypergraph); 3] = [
        ("star", star),
        ("complete-2-graph-4", Hypergraph::complete(4, 2)),
        ("isolated-vertex", isolated),
    ];
    let mut sweep = Sweep::new(
        "regularization-examples",
        json!({"cases": ["star", "complete-2-graph-4", "isolated-vertex"]}),
        "star and K4 unchanged; an isolated vertex is removed first",
    );
    for (name, f) in cases {
        let ok = match regularize(&f) {
            Ok(r) if name == "isolated-vertex" => r.removed_order.first() == Some(&5),
            Ok(r) => r.removed_order.is_empty(),
            Err(_) => false,
        };
        sweep.check(ok, || format!("# {name}\n{}", to_edge_list_string(&f)));
    }
    ctx.finish(sweep);
}

fn heavy_vertices_suite(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(3, 12) else { return };
    let max_m = ctx.budget.max_m;
    let sweep = Sweep::new(
        "heavy-vertices",
        json!({"instances": 300, "max_n": n_max, "windows": "every 0 < i < n"}),
        "wp(F, i) <= |F|/2 implies more than i vertices of degree >= |F|/(2n); otherwise a hypothesis error",
    );
    ctx.parallel_sweep(sweep, 300, 0, |rng| {
        let n = rng.random_range(3..=n_max);
        let k = rng.random_range(1..=3.min(n));
        let m = rng.random_range(1..=binom(n, k).min(max_m));
        let f = random_uniform(rng, n, k, m);
        let threshold = m as f64 / (2.0 * n as f64);
        let expect: Vec<usize> = (0..n)
            .filter(|&v| codegree_exact(&f, &[v]).unwrap() as f64 >= threshold)
            .collect();
        for i in 1..n {
            let w = wp_exact(&f, i).unwrap();
            let ok = match heavy_vertices(&f, i) {
                Ok(found) => 2 * w <= m && found.len() > i && found == expect,
                Err(Error::WpHypothesis { wp, .. }) => 2 * w > m && wp as usize == w,
                Err(_) => false,
            };
            if !ok {
                return Outcome::family(false, &f, || format!("i = {i}, wp = {w}"));
            }
        }
        Outcome::Pass
    });
}

fn heavy_tuples_suite(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(6, 14) else { return };
    let max_m = ctx.budget.max_m;
    let mut hypothesis_met = 0u64;
    let base = ctx.base(0);
    let outcomes: Vec<(Outcome, u64)> = (0..200u64)
        .into_par_iter()
        .map(|j| {
            let rng = &mut rng_from_seed(derive_seed(base, j));
            let n = rng.random_range(6..=n_max);
            let hi = (binom(n, 3) / 2).min(max_m).max(n);
            let m = rng.random_range(n..=hi).min(binom(n, 3));
            let f = random_uniform(rng, n, 3, m);
            let mut met = 0;
            for s in 1..=2usize {
                for i in 3..=5.min(n - 1) {
                    let w = wp_exact(&f, i).unwrap() as f64;
                    let limit = m as f64 / (2f64.powi(s as i32) * (n as f64).powi(s as i32 - 1));
                    let holds = w <= limit;
                    let ok = match heavy_tuples(&f, s, i) {
                        Ok(h) => {
                            met += 1;
                            let sorted = h.tuples.windows(2).all(|p| p[0].entries() <= p[1].entries());
                            holds
                                && sorted
                                && h.tuples.len() >= i.pow(s as u32)
                                && h.tuples.iter().all(|u| {
                                    codegree_exact(&f, &u.distinct().to_vec()).unwrap() as f64
                                        >= h.threshold
                                })
                        }
                        Err(Error::WpHypothesis { .. }) => !holds,
                        Err(_) => false,
                    };
                    if !ok {
                        return (
                            Outcome::family(false, &f, || format!("s = {s}, i = {i}, wp = {w}")),
                            met,
                        );
                    }
                }
            }
            (Outcome::Pass, met)
        })
        .collect();
    let mut sweep = Sweep::new(
        "heavy-tuples",
        json!({"instances": 200, "max_n": n_max, "uniformity": 3, "s": [1, 2], "i": [3, 4, 5]}),
        "under wp(F, i) <= |F|/(2^s n^{s-1}): at least i^s tuples, each with |F(U)| >= |F|/(2n)^s",
    );
    for (o, met) in outcomes {
        hypothesis_met += met;
        sweep.absorb(o);
    }
    sweep.extra = json!({"hypothesis_met": hypothesis_met});
    ctx.finish(sweep);

    let f = Hypergraph::complete(8, 3);
    let zero = heavy_tuples(&f, 0, 2);
    let ok = matches!(&zero, Ok(h) if h.tuples.len() == 1 && h.tuples[0].arity() == 0 && h.threshold == 56.0);
    ctx.single(
        "heavy-tuples-empty",
        json!({"family": "complete 3-graph on 8", "s": 0}),
        "one empty tuple with threshold |F|",
        json!({"ok": ok}),
        ok,
        || to_edge_list_string(&f),
    );
}

fn link_shadow(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(3, 10) else { return };
    let max_m = ctx.budget.max_m;
    let make = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(3..=n_max);
        let k = rng.random_range(1..=n.min(4));
        let m = rng.random_range(1..=binom(n, k).min(max_m).min(120));
        (k, random_uniform(rng, n, k, m))
    };
    let sweep = Sweep::new(
        "link-shadow-lower",
        json!({"instances": 300, "max_n": n_max, "max_k": 4}),
        "i^{-t} Σ_U C(x_U, i - |U|) <= |shadow(F, i)| for all t <= i <= k",
    );
    ctx.parallel_sweep(sweep, 300, 0, |rng| {
        let (k, f) = make(rng);
        for i in 0..=k {
            let exact = shadow_exact(&f, i).unwrap() as f64;
            for t in 0..=i {
                match collect_link_shadow_lower(&f, t, i) {
                    Ok(b) if b <= exact * (1.0 + 1e-9) + 1e-9 => {}
                    Ok(b) => {
                        return Outcome::family(false, &f, || {
                            format!("t = {t}, i = {i}: bound {b} > shadow {exact}")
                        })
                    }
                    Err(e) => return Outcome::error(e, &f),
                }
            }
        }
        Outcome::Pass
    });
    let sweep = Sweep::new(
        "link-shadow-t0",
        json!({"instances": 300, "max_n": n_max, "max_k": 4}),
        "with t = 0 the bound equals C(y, i) within 1e-6 relative",
    );
    ctx.parallel_sweep(sweep, 300, 1, |rng| {
        let (k, f) = make(rng);
        for i in 0..=k {
            let (b, kk) = match (collect_link_shadow_lower(&f, 0, i), kk_floor(f.len(), k, i)) {
                (Ok(b), Ok(kk)) => (b, kk),
                (Err(e), _) | (_, Err(e)) => return Outcome::error(e, &f),
            };
            if (b - kk).abs() > 1e-6 * kk.abs().max(1e-300) {
                return Outcome::family(false, &f, || format!("i = {i}: {b} vs {kk}"));
            }
        }
        Outcome::Pass
    });
}

fn sum_bound(ctx: &mut Ctx) {
    let mut sweep = Sweep::new(
        "sum-bound",
        json!({"k": "1..=10", "x": "k..=30 step 0.5", "gamma": "0..=1 step 0.1"}),
        "Σ_{i<=k} C(x, i) γ^i >= ¼ (Σ_{i<=k} C(x, i))^{log(1+γ)}",
    );
    let mut worst: f64 = f64::INFINITY;
    for k in 1..=10usize {
        let mut x = k as f64;
        while x <= 30.0 {
            for g in 0..=10 {
                let gamma = g as f64 / 10.0;
                match sum_binom_gamma_lower(k, x, gamma) {
                    Ok(c) => {
                        worst = worst.min(c.lhs / c.rhs);
                        sweep.check(c.holds, || format!("k = {k}, x = {x}, γ = {gamma}: {c:?}"));
                    }
                    Err(e) => sweep.check(false, || format!("k = {k}, x = {x}, γ = {gamma}: {e}")),
                }
            }
            x += 0.5;
        }
    }
    sweep.extra = json!({"min_ratio": worst});
    ctx.finish(sweep);
}

fn exp_sandwich_suite(ctx: &mut Ctx) {
    let mut lower = Sweep::new(
        "exp-sandwich-lower",
        json!({"x": "0..=0.5 step 0.01"}),
        "e^{-2x} <= 1 - x",
    );
    for j in 0..=50 {
        let x = j as f64 / 100.0;
        lower.check(exp_sandwich(x).lower == Some(true), || format!("x = {x}"));
    }
    ctx.finish(lower);
    let mut upper = Sweep::new(
        "exp-sandwich-upper",
        json!({"x": "-2..=2 step 0.01"}),
        "1 - x <= e^{-x}",
    );
    for j in -200..=200 {
        let x = j as f64 / 100.0;
        upper.check(exp_sandwich(x).upper, || format!("x = {x}"));
    }
    ctx.finish(upper);
}

fn binom_ratio(ctx: &mut Ctx) {
    let sweep = Sweep::new(
        "binom-ratio",
        json!({"instances": 10000, "k": "1..=8", "x": "(k-Δ-1, 40]", "y": "(k-1, y_max]"}),
        "C(y, k) <= C(x, k-Δ) implies C(y, i)/C(y, k) >= i^{-Δ} C(x, i-Δ)/C(x, k-Δ)",
    );
    ctx.parallel_sweep(sweep, 10_000, 0, |rng| {
        let k = rng.random_range(1..=8usize);
        let delta = rng.random_range(0..=k);
        let i = rng.random_range(delta..=k);
        let x_lo = (k - delta) as f64 - 1.0;
        let x = rng.random_range(x_lo.max(0.0) + 1e-3..=40.0);
        let cap = binom_real(x, k - delta);
        let y_lo = (k as f64 - 1.0).max(0.0) + 1e-3;
        let Ok(y_hi) = invert_binomial(cap, k) else { return Outcome::Skip };
        if y_hi <= y_lo {
            return Outcome::Skip;
        }
        let y = rng.random_range(y_lo..=y_hi);
        match binom_ratio_lower(x, y, k, i, delta) {
            Ok(c) => Outcome::check(c.holds, || {
                format!("x = {x}, y = {y}, k = {k}, i = {i}, Δ = {delta}: {c:?}")
            }),
            Err(e) => Outcome::Fail(format!("x = {x}, y = {y}, k = {k}, i = {i}, Δ = {delta}: {e}")),
        }
    });
}

fn newton(ctx: &mut Ctx) {
    let mut sweep = Sweep::new(
        "newton-partial-sum",
        json!({"x": "0.1..=40 step 0.1"}),
        "2^{x-1} < Σ_{i<=⌊x⌋} C(x, i) <= 2^x",
    );
    for j in 1..=400 {
        let x = j as f64 / 10.0;
        match newton_partial_sum_bounds(x) {
            Ok(b) => sweep.check(b.holds, || format!("x = {x}: {b:?}")),
            Err(e) => sweep.check(false, || format!("x = {x}: {e}")),
        }
    }
    ctx.finish(sweep);
}

fn hypergeometric(ctx: &mut Ctx) {
    let results: Vec<(u64, u64, Option<String>)> = (1..=400u64)
        .into_par_iter()
        .map(|n| {
            let x_max = 20.min((n as f64).sqrt().floor() as u64);
            let mut checked = 0;
            let mut violations = 0;
            let mut witness = None;
            for x in 0..=x_max {
                checked += (n + 1) * (x + 1);
                match hypergeom_domination_violations(n, x) {
                    Ok(0) => {}
                    Ok(v) => {
                        violations += v;
                        witness.get_or_insert(format!("n = {n}, x = {x}: {v} violations"));
                    }
                    Err(e) => {
                        violations += 1;
                        witness.get_or_insert(format!("n = {n}, x = {x}: {e}"));
                    }
                }
            }
            (checked, violations, witness)
        })
        .collect();
    let checked: u64 = results.iter().map(|r| r.0).sum();
    let violations: u64 = results.iter().map(|r| r.1).sum();
    let witness = results.into_iter().find_map(|r| r.2);
    ctx.single(
        "hypergeometric-domination",
        json!({"n": "1..=400", "x": "0..=min(20, √n)", "y": "0..=n", "h": "0..=x"}),
        "P[H = h] <= 2 P[Bin(x, y/n) = h], zero violations",
        json!({"checked": checked, "violations": violations}),
        violations == 0,
        || witness.unwrap_or_default(),
    );

    let mut sweep = Sweep::new(
        "hypergeometric-examples",
        json!({"cases": ["n=100,x=10,y=50,h=5", "x=1 matches Bernoulli", "x=n draws everything"]}),
        "pmf identities at the boundary cases",
    );
    let h = hypergeom_pmf(100, 10, 50, 5).unwrap();
    let b = binom_pmf(10, 0.5, 5).unwrap();
    sweep.check(h <= 2.0 * b, || format!("{h} > 2 * {b}"));
    for (n, y) in [(10u64, 3u64), (7, 0), (7, 7)] {
        for hh in 0..=1 {
            let a = hypergeom_pmf(n, 1, y, hh).unwrap();
            let c = binom_pmf(1, y as f64 / n as f64, hh).unwrap();
            sweep.check((a - c).abs() <= 1e-15, || format!("n = {n}, y = {y}, h = {hh}: {a} vs {c}"));
        }
        for hh in 0..=n {
            let a = hypergeom_pmf(n, n, y, hh).unwrap();
            let want = if hh == y { 1.0 } else { 0.0 };
            sweep.check((a - want).abs() <= 1e-12, || format!("x = n = {n}, y = {y}, h = {hh}: {a}"));
        }
    }
    ctx.finish(sweep);
}

fn chernoff(ctx: &mut Ctx) {
    let cases: [(BoundedSum, Option<f64>); 6] = [
        (BoundedSum::Bernoulli { count: 100, p: 0.5 }, Some(50.0)),
        (BoundedSum::Bernoulli { count: 30, p: 0.2 }, None),
        (BoundedSum::Bernoulli { count: 60, p: 0.05 }, None),
        (BoundedSum::Uniform { count: 12 }, None),
        (BoundedSum::Constant { count: 5, value: 0.0 }, Some(0.5)),
        (BoundedSum::Bernoulli { count: 200, p: 0.01 }, Some(2.0)),
    ];
    let mut sweep = Sweep::new(
        "chernoff-tail",
        json!({"trials": 20480, "x": "E(X)/3 unless fixed"}),
        "frequency of X >= 6x <= e^{-x} + 3σ",
    );
    let mut rows = Vec::new();
    for (j, (dist, x)) in cases.into_iter().enumerate() {
        let x = x.unwrap_or(dist.mean() / 3.0);
        match chernoff_tail_check(20_480, dist, x, ctx.base(j as u64)) {
            Ok(c) => {
                rows.push(json!({"dist": format!("{dist:?}"), "x": x, "empirical": c.empirical, "bound": c.bound}));
                sweep.check(c.holds, || format!("{dist:?}, x = {x}: {c:?}"));
            }
            Err(e) => sweep.check(false, || format!("{dist:?}, x = {x}: {e}")),
        }
    }
    sweep.extra = json!({"cases": rows});
    ctx.finish(sweep);
}

fn sparse_kk(ctx: &mut Ctx) {
    if let Some(n_max) = ctx.n_range(8, 14) {
        let base = ctx.base(0);
        let outcomes: Vec<(Outcome, bool)> = (0..200u64)
            .into_par_iter()
            .map(|j| {
                let rng = &mut rng_from_seed(derive_seed(base, j));
                let n = rng.random_range(8..=n_max);
                let m = rng.random_range(n..=3 * n);
                let alpha = [0.5, 0.75, 1.0][rng.random_range(0..3)];
                let f = random_uniform(rng, n, 3, m);
                let window = (alpha * n as f64).floor() as usize;
                let w = wp_exact(&f, window).unwrap() as u64;
                let Ok(p) = sparse_kk_params(n, None, alpha, 3, w, m as u64) else {
                    return (Outcome::Skip, false);
                };
                let relation = p.t <= ceil_snapped(p.r) && ceil_snapped(p.r) as usize <= p.k;
                if !relation {
                    return (Outcome::family(false, &f, || format!("{p:?}")), false);
                }
                if !p.hypothesis_holds() {
                    return (Outcome::Skip, false);
                }
                for i in p.t as usize..=3 {
                    let exact = shadow_exact(&f, i).unwrap() as f64;
                    match p.bound(i) {
                        Ok(b) if b.value <= exact => {}
                        Ok(b) => {
                            return (
                                Outcome::family(false, &f, || format!("i = {i}: {b:?} vs {exact}")),
                                true,
                            )
                        }
                        Err(e) => return (Outcome::error(e, &f), true),
                    }
                }
                (Outcome::Pass, true)
            })
            .collect();
        let mut sweep = Sweep::new(
            "sparse-kk-bound",
            json!({"instances": 200, "max_n": n_max, "uniformity": 3, "alpha": [0.5, 0.75, 1.0]}),
            "t <= ⌈r⌉ <= k, and under the certified wp hypothesis the bound is at most |shadow(F, i)|",
        );
        let mut vacuous_free = 0u64;
        for (o, _) in outcomes {
            if matches!(o, Outcome::Pass) {
                vacuous_free += 1;
            }
            sweep.absorb(o);
        }
        sweep.extra = json!({"certified": vacuous_free});
        ctx.finish(sweep);
    }
    let p = sparse_kk_params(1024, Some(1.0), 0.5, 3, 1, 1024);
    let (ok, observed) = match &p {
        Ok(p) => (
            p.c == 1152.0 && p.c_err == 53_084_160.0,
            json!({"c": p.c, "c_err": p.c_err, "s": p.s, "t": p.t}),
        ),
        Err(e) => (false, json!({"error": e.to_string()})),
    };
    ctx.single(
        "sparse-kk-constants",
        json!({"n": 1024, "r": 1, "alpha": 0.5, "k": 3}),
        "c = 1152, C = 53084160",
        observed,
        ok,
        || format!("{p:?}"),
    );
}

fn exponents(ctx: &mut Ctx) {
    let m = mu(2.0, 0.5).unwrap_or(f64::NAN);
    let l2 = 2.0 * lambda_br(0.5).unwrap_or(f64::NAN);
    let ok = (m - 1.706695).abs() <= 1e-6 && (l2 - 1.169925).abs() <= 1e-6;
    ctx.single(
        "exponents-printed",
        json!({"r": 2, "alpha": 0.5}),
        "μ = 1.706695 ± 1e-6 and 2λ = 1.169925 ± 1e-6",
        json!({"mu": m, "two_lambda": l2}),
        ok,
        || format!("mu = {m}, 2 lambda = {l2}"),
    );
    let corners = [
        mu(1.0, 1.0).ok() == Some(1.0),
        mu(2.0, 1.0).ok() == Some(2.0),
        lambda_br(1.0).ok() == Some(1.0),
    ];
    ctx.single(
        "exponents-corners",
        json!({"cases": ["mu(1,1)", "mu(2,1)", "lambda(1)"]}),
        "1, 2, 1",
        json!(corners),
        corners.iter().all(|&c| c),
        || format!("{corners:?}"),
    );
    let mut in_r = Sweep::new(
        "mu-increasing-in-r",
        json!({"r": "1..=4 step 0.25", "alpha": "0.05..=1 step 0.05"}),
        "μ(r, α) strictly increasing in r",
    );
    let mut in_alpha = Sweep::new(
        "mu-increasing-in-alpha",
        json!({"r": "1.25..=4 step 0.25", "alpha": "0.05..=1 step 0.05"}),
        "μ(r, α) strictly increasing in α for r > 1",
    );
    for a in 1..=20 {
        let alpha = a as f64 / 20.0;
        for j in 0..12 {
            let r = 1.0 + j as f64 / 4.0;
            let here = mu(r, alpha).unwrap();
            let next_r = mu(r + 0.25, alpha).unwrap();
            in_r.check(next_r > here, || format!("r = {r}, α = {alpha}"));
            if j > 0 && a < 20 {
                let next_a = mu(r, alpha + 0.05).unwrap();
                in_alpha.check(next_a > here, || format!("r = {r}, α = {alpha}"));
            }
        }
    }
    ctx.finish(in_r);
    ctx.finish(in_alpha);
}

fn tau_lower(ctx: &mut Ctx) {
    let b = trace_tau_lower(1024, 2.0, 0.5);
    let ok = matches!(&b, Ok(b) if (b.mu - 1.706695).abs() <= 1e-6 && b.vacuous);
    ctx.single(
        "tau-lower-exponent",
        json!({"n": 1024, "r": 2, "alpha": 0.5}),
        "μ = 1.706695 reproduced; the bound is vacuous at this n",
        json!(b.as_ref().map(|b| json!(b)).unwrap_or(Value::Null)),
        ok,
        || format!("{b:?}"),
    );
    if ctx.budget.max_n < 4 {
        return;
    }
    let mut sweep = Sweep::new(
        "tau-lower-vs-exact",
        json!({"cases": [[4, 1.0, 0.75], [4, 1.5, 0.75], [4, 2.0, 0.5], [2, 1.0, 1.0]]}),
        "n^μ / C'' <= τ(n, n^r, ⌊αn⌋)",
    );
    for (n, r, alpha) in [(4usize, 1.0, 0.75), (4, 1.5, 0.75), (4, 2.0, 0.5), (2, 1.0, 1.0)] {
        let m = (n as f64).powf(r).round() as usize;
        let k = (alpha * n as f64).floor() as usize;
        match (trace_tau_lower(n, r, alpha), tau_exact(n, m, k, &ctx.budget)) {
            (Ok(lb), Ok(tau)) => sweep.check(lb.bound <= tau as f64, || {
                format!("n = {n}, r = {r}, α = {alpha}: {} > {tau}", lb.bound)
            }),
            (Err(e), _) | (_, Err(e)) => {
                if matches!(e, Error::BudgetExceeded { .. }) {
                    sweep.partial = true;
                } else {
                    sweep.check(false, || format!("n = {n}, r = {r}, α = {alpha}: {e}"));
                }
            }
        }
    }
    ctx.finish(sweep);
}

fn construction(ctx: &mut Ctx) {
    let spec = ConstructionSpec::sparse_kk(256, 1.0, 0.5, 3, 6)
        .relaxed(true)
        .with_seed(ctx.base(0));
    let mut sweep = Sweep::new(
        "construction-cliques",
        json!({"n": 256, "r": 1, "alpha": 0.5, "k": 3, "x": 6, "relaxed": true}),
        "|F| = ℓ C(x, k) before trimming, shadow <= ℓ C(x, i), sampled wp <= 6 C(x, k) n, rebuild identical",
    );
    match build_sparse_kk_extremal(&spec) {
        Ok(report) => {
            let disjoint = report.untrimmed_size == (report.ell * binom(report.x, report.k)) as u64;
            sweep.check(disjoint, || format!("untrimmed {} for ℓ = {}", report.untrimmed_size, report.ell));
            for i in 0..=report.k {
                match verify_shadow_upper(&report, i) {
                    Ok(c) => sweep.check(c.holds, || format!("{c:?}")),
                    Err(e) => sweep.check(false, || e.to_string()),
                }
            }
            match verify_wp_upper(&report, WpMode::Sample { trials: 2000 }, ctx.base(1)) {
                Ok(w) => sweep.check(w.holds, || format!("{w:?}")),
                Err(e) => sweep.check(false, || e.to_string()),
            }
            let again = build_sparse_kk_extremal(&spec).map(|r| r.family == report.family);
            sweep.check(matches!(again, Ok(true)), || "rebuild differs".into());
        }
        Err(e) => sweep.check(false, || e.to_string()),
    }
    ctx.finish(sweep);

    let spec = ConstructionSpec::trace_ub(256, 2.0, 0.5).with_seed(ctx.base(2));
    let mut sweep = Sweep::new(
        "construction-power-sets",
        json!({"n": 256, "r": 2, "alpha": 0.5, "trials": 2000}),
        "|F| >= n^r, mean X within CI of <= 4 n^μ, max sampled trace <= 8 n^μ",
    );
    match build_trace_ub_family(&spec) {
        Ok(report) => {
            sweep.check(report.family_size >= report.target_size, || format!("{}", report.family_size));
            match report.sample_trace_statistics(2000, ctx.base(3)) {
                Ok(s) => {
                    sweep.check(s.x_mean_ok, || format!("{s:?}"));
                    sweep.check(s.max_trace_ok, || format!("{s:?}"));
                }
                Err(e) => sweep.check(false, || e.to_string()),
            }
        }
        Err(e) => sweep.check(false, || e.to_string()),
    }
    let disjoint = TraceUbFamily::from_sets(12, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]]);
    sweep.check(
        matches!(&disjoint, Ok(f) if f.len() == 4 * 7 + 1),
        || format!("{:?}", disjoint.map(|f| f.len())),
    );
    ctx.finish(sweep);
}

fn tau_exact_suite(ctx: &mut Ctx) {
    let budget = ctx.budget;
    if budget.max_n < 2 {
        return;
    }
    let mut known = Sweep::new(
        "tau-exact-known",
        json!({"cases": ["τ(4,4,3) = 4", "τ(4,10,3) = 7", "τ(n,2^n,k) = 2^k"]}),
        "exact integers",
    );
    let mut cases: Vec<(usize, usize, usize, u64)> = vec![(4, 4, 3, 4), (4, 10, 3, 7)];
    for n in 1..=3 {
        for k in 0..=n {
            cases.push((n, 1 << n, k, 1 << k));
        }
    }
    for (n, m, k, want) in cases {
        if n > budget.max_n {
            continue;
        }
        match tau_exact(n, m, k, &budget) {
            Ok(v) => known.check(v == want, || format!("τ({n},{m},{k}) = {v}, expected {want}")),
            Err(Error::BudgetExceeded { .. }) => known.partial = true,
            Err(e) => known.check(false, || format!("τ({n},{m},{k}): {e}")),
        }
    }
    ctx.finish(known);

    let n_max = budget.max_n.min(4);
    let mut mono = Sweep::new(
        "tau-exact-monotone",
        json!({"max_n": n_max}),
        "τ(n, m, k) nondecreasing in k and in m",
    );
    'outer: for n in 1..=n_max {
        let mut table = vec![vec![0u64; n + 1]; (1 << n) + 1];
        for (m, row) in table.iter_mut().enumerate().skip(1) {
            for (k, cell) in row.iter_mut().enumerate() {
                match tau_exact(n, m, k, &budget) {
                    Ok(v) => *cell = v,
                    Err(_) => {
                        mono.partial = true;
                        break 'outer;
                    }
                }
            }
        }
        for m in 1..=1usize << n {
            for k in 0..=n {
                if k > 0 {
                    mono.check(table[m][k] >= table[m][k - 1], || format!("n = {n}, m = {m}, k = {k}"));
                }
                if m > 1 {
                    mono.check(table[m][k] >= table[m - 1][k], || format!("n = {n}, m = {m}, k = {k}"));
                }
            }
        }
    }
    ctx.finish(mono);
}

fn differential(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(1, 12) else { return };
    let max_m = ctx.budget.max_m;
    let sweep = Sweep::new(
        "differential",
        json!({"instances": 10000, "max_n": n_max, "max_m": 40}),
        "trace, trace_value, shadow and wp agree with the naive oracle",
    );
    ctx.parallel_sweep(sweep, 10_000, 0, |rng| {
        let n = rng.random_range(1..=n_max);
        let m = rng.random_range(0..=(1usize << n).min(max_m).min(40));
        let f = random_family(rng, n, m);
        let w = random_window(rng, n);
        let k = rng.random_range(0..=n);
        let i = rng.random_range(0..=n);
        let s = rng.random_range(0..=f.max_edge_size());
        let fast = (
            trace_size(&f, &vs(&w)).ok(),
            trace_value(&f, k).ok().map(|v| v as usize),
            shadow_size(&f, s),
            wp(&f, i).ok().map(|v| v as usize),
        );
        let slow = (
            trace_exact(&f, &w).ok(),
            trace_value_exact(&f, k).ok(),
            shadow_exact(&f, s).unwrap_or(usize::MAX),
            wp_exact(&f, i).ok(),
        );
        Outcome::family(fast == slow, &f, || {
            format!("window {w:?}, k = {k}, i = {i}, s = {s}: {fast:?} vs {slow:?}")
        })
    });
}

fn vc(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(1, 8) else { return };
    let max_m = ctx.budget.max_m;
    let sweep = Sweep::new(
        "vc-dimension",
        json!({"instances": 300, "max_n": n_max}),
        "vc_dimension = max k with τ(F, k) = 2^k",
    );
    ctx.parallel_sweep(sweep, 300, 0, |rng| {
        let n = rng.random_range(1..=n_max);
        let m = rng.random_range(0..=(1usize << n).min(max_m).min(64));
        let f = random_family(rng, n, m);
        let naive = (!f.is_empty()).then(|| {
            (0..=n)
                .filter(|&k| trace_value_exact(&f, k).unwrap() == 1 << k)
                .max()
                .unwrap_or(0)
        });
        match vc_dimension(&f) {
            Ok(v) => Outcome::family(v == naive, &f, || format!("{v:?} vs {naive:?}")),
            Err(e) => Outcome::error(e, &f),
        }
    });
    let cube = Hypergraph::power_set(3, &VertexSet::from_vertices(0..3)).unwrap();
    let single = Hypergraph::from_edge_lists(4, &[vec![0, 2]]).unwrap();
    let star = Hypergraph::from_edge_lists(2, &[vec![], vec![0], vec![1]]).unwrap();
    let got = [
        vc_dimension(&cube).ok().flatten(),
        vc_dimension(&single).ok().flatten(),
        vc_dimension(&star).ok().flatten(),
    ];
    let ok = got == [Some(3), Some(0), Some(1)];
    ctx.single(
        "vc-examples",
        json!({"cases": ["power set of a 3-set", "one edge", "{∅, {0}, {1}}"]}),
        "3, 0, 1",
        json!(got),
        ok,
        || format!("{got:?}"),
    );
}

fn separating(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(2, 12) else { return };
    let max_m = ctx.budget.max_m;
    let sweep = Sweep::new(
        "separating-subset",
        json!({"instances": 200, "max_n": n_max, "trials": 10}),
        "representatives have pairwise distinct projections, one per member of the trace",
    );
    ctx.parallel_sweep(sweep, 200, 0, |rng| {
        let n = rng.random_range(2..=n_max);
        let m = rng.random_range(1..=(1usize << n).min(max_m).min(60));
        let f = random_family(rng, n, m);
        let size = rng.random_range(0..=n);
        let seed = rng.random();
        match find_separating_subset(&f, size, 10, seed) {
            Ok(sep) => {
                let window = sep.window.to_vec();
                let edges = f.edge_vectors();
                let projections: BTreeSet<Vec<usize>> = sep
                    .representatives
                    .iter()
                    .map(|&r| edges[r].iter().copied().filter(|v| window.contains(v)).collect())
                    .collect();
                let ok = projections.len() == sep.representatives.len()
                    && sep.trace() == trace_exact(&f, &window).unwrap()
                    && window.len() == size;
                Outcome::family(ok, &f, || format!("window {window:?}"))
            }
            Err(e) => Outcome::error(e, &f),
        }
    });
}

fn hypergraph_invariants(ctx: &mut Ctx) {
    let Some(n_max) = ctx.n_range(1, 10) else { return };
    let max_m = ctx.budget.max_m;
    let make = move |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=n_max);
        let m = rng.random_range(0..=(1usize << n).min(max_m).min(80));
        random_family(rng, n, m)
    };
    let sweep = Sweep::new(
        "trace-monotone",
        json!({"instances": 300, "max_n": n_max}),
        "I ⊆ J implies |F_I| <= |F_J|",
    );
    ctx.parallel_sweep(sweep, 300, 0, |rng| {
        let f = make(rng);
        let big = random_window(rng, f.n());
        let keep = rng.random_range(0..=big.len());
        let mut small = sample_subset(big.len(), keep, rng)
            .into_iter()
            .map(|i| big[i])
            .collect::<Vec<_>>();
        small.sort_unstable();
        let (a, b) = (trace_size(&f, &vs(&small)), trace_size(&f, &vs(&big)));
        Outcome::family(matches!((&a, &b), (Ok(a), Ok(b)) if a <= b), &f, || {
            format!("{small:?} ⊆ {big:?}: {a:?} vs {b:?}")
        })
    });
    let sweep = Sweep::new(
        "trace-full-window",
        json!({"instances": 300, "max_n": n_max}),
        "trace_value(F, n) = |F|",
    );
    ctx.parallel_sweep(sweep, 300, 1, |rng| {
        let f = make(rng);
        let v = trace_value(&f, f.n());
        Outcome::family(matches!(v, Ok(v) if v as usize == f.len()), &f, || format!("{v:?}"))
    });
    let sweep = Sweep::new(
        "induced-below-trace",
        json!({"instances": 300, "max_n": n_max}),
        "|F[I]| <= |F_I|",
    );
    ctx.parallel_sweep(sweep, 300, 2, |rng| {
        let f = make(rng);
        let w = vs(&random_window(rng, f.n()));
        let (a, b) = (induced(&f, &w).map(|h| h.len()), trace_size(&f, &w));
        Outcome::family(matches!((&a, &b), (Ok(a), Ok(b)) if a <= b), &f, || format!("{a:?} vs {b:?}"))
    });
    let sweep = Sweep::new(
        "shadow-nesting",
        json!({"instances": 300, "max_n": n_max}),
        "for a k-graph and i <= j <= k: every member of shadow(F, i) lies in a member of shadow(F, j)",
    );
    ctx.parallel_sweep(sweep, 300, 3, |rng| {
        let n = rng.random_range(1..=n_max);
        let k = rng.random_range(0..=n);
        let m = rng.random_range(1..=binom(n, k).min(max_m).min(80));
        let f = random_uniform(rng, n, k, m);
        let top = f.max_edge_size();
        let j = rng.random_range(0..=top);
        let i = rng.random_range(0..=j);
        let upper = shadow(&f, j);
        let ok = shadow(&f, i)
            .iter()
            .all(|s| upper.iter().any(|t| s.is_subset(t)));
        Outcome::family(ok, &f, || format!("i = {i}, j = {j}"))
    });
    let sweep = Sweep::new(
        "closure",
        json!({"instances": 300, "max_n": n_max}),
        "downward closure is idempotent and monotone",
    );
    ctx.parallel_sweep(sweep, 300, 4, |rng| {
        let f = make(rng);
        let more = rng.random_range(0..=(1usize << f.n()).min(8));
        let extra = random_family(rng, f.n(), more);
        let g = Hypergraph::new(f.n(), f.edges().iter().chain(extra.edges()).cloned()).unwrap();
        let (cf, cg) = match (downward_closure(&f), downward_closure(&g)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return Outcome::error(e, &f),
        };
        let idem = downward_closure(&cf).map(|c| c == cf).unwrap_or(false);
        let mono = cf.edges().iter().all(|e| cg.contains_edge(e));
        Outcome::family(idem && mono, &f, || format!("idempotent {idem}, monotone {mono}"))
    });
    let sweep = Sweep::new(
        "popular-layer",
        json!({"instances": 300, "max_n": n_max}),
        "for down-closed H, the popular layer has at least |H| / (log|H| + 1) edges",
    );
    ctx.parallel_sweep(sweep, 300, 5, |rng| {
        let f = make(rng);
        let Ok(h) = downward_closure(&f) else { return Outcome::Skip };
        if h.is_empty() {
            return Outcome::Skip;
        }
        match popular_layer(&h) {
            Ok((k, layer)) => {
                let need = h.len() as f64 / ((h.len() as f64).log2() + 1.0);
                let ok = layer.len() as f64 >= need && layer.uniformity().is_none_or(|u| u == k);
                Outcome::family(ok, &h, || format!("k = {k}, |layer| = {}, need {need}", layer.len()))
            }
            Err(e) => Outcome::error(e, &h),
        }
    });
}
