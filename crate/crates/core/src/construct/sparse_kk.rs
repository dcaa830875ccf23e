//! Union of `k`-cliques on random `x`-sets.

use serde::{Deserialize, Serialize};

use super::{per_trial, random_sets, ConstructionSpec, SampleSummary};
use crate::binomials::binom_real;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{enumerate::binomial_u128, shadow_size, wp, DenseMask, Hypergraph, VertexSet};
use crate::sampling::{rng_from_seed, sample_subset};

/// Largest `n` for exact `wp` verification.
pub const EXACT_WP_MAX_N: usize = 24;

/// A successful clique-union build.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseKkReport {
    pub spec: ConstructionSpec,
    pub k: usize,
    pub x: usize,
    pub ell: usize,
    /// The random sets, each sorted.
    pub sets: Vec<Vec<usize>>,
    /// Trimmed to the `⌈n^r⌉` colex-smallest edges when the union is larger.
    #[serde(skip)]
    pub family: Hypergraph,
    pub untrimmed_size: u64,
    pub target_size: u64,
    pub e1_holds: bool,
    pub max_pairwise_intersection: usize,
    /// Entry `h` counts pairs of sets meeting in exactly `h` vertices.
    pub intersection_histogram: Vec<u64>,
    pub retries_used: u32,
    pub attempt_seed: u64,
    pub relaxed: bool,
}

/// `F = ⋃_j C(S_j, k)` on `0..n`.
pub fn union_of_cliques(n: usize, k: usize, sets: &[Vec<usize>]) -> Result<Hypergraph> {
    let mut edges = Vec::new();
    for s in sets {
        edges.extend(VertexSet::from_vertices(s.iter().copied()).subsets_of_size(k));
    }
    Hypergraph::new(n, edges)
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn intersection_histogram(sets: &[Vec<usize>], x: usize) -> Vec<u64> {
    let mut hist = vec![0u64; x + 1];
    for (a, sa) in sets.iter().enumerate() {
        for sb in &sets[a + 1..] {
            hist[intersection_len(sa, sb)] += 1;
        }
    }
    hist
}

fn check_regime(spec: &ConstructionSpec) -> Result<(usize, usize, usize)> {
    spec.check_common()?;
    let (k, x) = match (spec.k, spec.x) {
        (Some(k), Some(x)) => (k, x),
        _ => return Err(invalid("the clique construction needs k and x")),
    };
    let (n, r, alpha) = (spec.n as f64, spec.r, spec.alpha);
    if !(3.0 * r <= k as f64 && k <= x && x <= spec.n) {
        return Err(invalid(format!(
            "need 3r <= k <= x <= n, got r = {r}, k = {k}, x = {x}, n = {}",
            spec.n
        )));
    }
    let cliques = binom_real(x as f64, k);
    let n_r = n.powf(r);
    let dense = alpha.powi(k as i32) * n_r;
    if !spec.relaxed {
        if x as f64 > n.powf(1.0 / 6.0) {
            return Err(invalid(format!(
                "need x <= n^(1/6) = {:.3}; pass relaxed to build outside this regime",
                n.powf(1.0 / 6.0)
            )));
        }
        if !(n <= dense && dense <= cliques * n) {
            return Err(invalid(format!(
                "need n <= α^k n^r <= C(x, k) n, got α^k n^r = {dense}; pass relaxed to build outside this regime"
            )));
        }
    }
    let lo = n_r / cliques;
    let hi = n / alpha.powi(k as i32);
    let ell = match spec.ell {
        Some(ell) => ell,
        None => (lo - 1e-9 * lo).ceil() as usize,
    };
    let in_range = ell as f64 >= lo * (1.0 - 1e-9) && ell as f64 <= hi;
    if ell == 0 || !(spec.relaxed || in_range) {
        return Err(invalid(format!(
            "need n^r / C(x, k) <= ℓ <= n / α^k, got ℓ = {ell} outside [{lo}, {hi}]"
        )));
    }
    Ok((k, x, ell))
}

/// Samples `ℓ` random `x`-sets and unions their `k`-cliques.
///
/// The intersection event (all pairs meet in fewer than `3r` vertices) is
/// checked exactly; on failure the build is redone from a fresh derived seed,
/// up to `max_retries` times. A successful union with at least `⌈n^r⌉` edges
/// is trimmed to its `⌈n^r⌉` colex-smallest edges.
pub fn build_sparse_kk_extremal(spec: &ConstructionSpec) -> Result<SparseKkReport> {
    let (k, x, ell) = check_regime(spec)?;
    let limit = 3.0 * spec.r;
    let mut combined = vec![0u64; x + 1];
    for attempt in 0..=spec.max_retries {
        let seed = spec.attempt_seed(attempt);
        let sets = random_sets(spec.n, x, ell, seed);
        let histogram = intersection_histogram(&sets, x);
        for (c, h) in combined.iter_mut().zip(&histogram) {
            *c += h;
        }
        let max_meet = histogram.iter().rposition(|&c| c > 0).unwrap_or(0);
        if (max_meet as f64) >= limit {
            continue;
        }
        let full = union_of_cliques(spec.n, k, &sets)?;
        let untrimmed_size = full.len() as u64;
        let target_size = spec.target_edges();
        let family = if untrimmed_size > target_size {
            Hypergraph::new(spec.n, full.edges()[..target_size as usize].iter().cloned())?
        } else {
            full
        };
        return Ok(SparseKkReport {
            spec: spec.clone(),
            k,
            x,
            ell,
            sets,
            family,
            untrimmed_size,
            target_size,
            e1_holds: true,
            max_pairwise_intersection: max_meet,
            intersection_histogram: histogram,
            retries_used: attempt,
            attempt_seed: seed,
            relaxed: spec.relaxed,
        });
    }
    Err(Error::ConstructionFailure {
        attempts: spec.max_retries + 1,
        detail: format!("every attempt had two sets meeting in at least 3r = {limit:.3} vertices"),
        histogram: combined,
    })
}

/// Exact shadow size against `ℓ C(x, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShadowCheck {
    pub i: usize,
    pub shadow_size: u64,
    /// `ℓ C(x, i)`.
    pub bound: f64,
    pub holds: bool,
    /// `C(x, i) / C(x, k) |F|` for the (possibly trimmed) family.
    pub ratio_form_bound: f64,
}

pub fn verify_shadow_upper(report: &SparseKkReport, i: usize) -> Result<ShadowCheck> {
    if i > report.k {
        return Err(invalid(format!("need i <= k = {}, got {i}", report.k)));
    }
    let shadow = shadow_size(&report.family, i) as u64;
    let cx = report.x as f64;
    let bound = report.ell as f64 * binom_real(cx, i);
    Ok(ShadowCheck {
        i,
        shadow_size: shadow,
        bound,
        holds: shadow as f64 <= bound,
        ratio_form_bound: binom_real(cx, i) / binom_real(cx, report.k) * report.family.len() as f64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WpMode {
    Exact,
    Sample { trials: u64 },
}

/// Induced-edge counts on `⌊αn⌋`-windows against `6 C(x, k) n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WpStatistics {
    pub window: usize,
    /// Exact `wp`, or the largest sampled count, which only bounds `wp` from below.
    pub value: u64,
    pub exact: bool,
    /// Present for sampled runs.
    pub summary: Option<SampleSummary>,
    pub bound: f64,
    pub holds: bool,
}

/// Edges of `f` inside each of `trials` random `size`-windows, in trial order.
pub fn sampled_induced_counts(f: &Hypergraph, size: usize, trials: u64, seed: u64) -> Vec<u64> {
    let n = f.n();
    per_trial(trials, seed, |s| {
        let mut rng = rng_from_seed(s);
        let window = DenseMask::from_vertices(n, sample_subset(n, size, &mut rng));
        f.edges()
            .iter()
            .filter(|e| e.is_subset_of_dense(&window))
            .count() as u64
    })
}

pub fn verify_wp_upper(report: &SparseKkReport, mode: WpMode, seed: u64) -> Result<WpStatistics> {
    let window = report.spec.window();
    let bound = 6.0 * binomial_u128(report.x as u64, report.k as u64) as f64 * report.spec.n as f64;
    let (value, exact, summary) = match mode {
        WpMode::Exact => {
            if report.spec.n > EXACT_WP_MAX_N {
                return Err(Error::Capacity(format!(
                    "exact wp needs n <= {EXACT_WP_MAX_N}, got {}; use sampling",
                    report.spec.n
                )));
            }
            (wp(&report.family, window)?, true, None)
        }
        WpMode::Sample { trials } => {
            if trials == 0 {
                return Err(invalid("trials must be positive"));
            }
            let counts = sampled_induced_counts(&report.family, window, trials, seed);
            let values: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
            let max = counts.iter().copied().max().unwrap_or(0);
            (max, false, Some(SampleSummary::from_values(&values)))
        }
    };
    Ok(WpStatistics {
        window,
        value,
        exact,
        summary,
        bound,
        holds: value as f64 <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_set_is_one_clique() {
        let spec = ConstructionSpec::sparse_kk(20, 1.0, 1.0, 3, 6).with_ell(1).relaxed(true);
        let rep = build_sparse_kk_extremal(&spec).unwrap();
        assert!(rep.e1_holds);
        assert_eq!(rep.family.len(), 20);
        assert_eq!(rep.untrimmed_size, 20);
        assert_eq!(rep.intersection_histogram, vec![0; 7]);
    }

    #[test]
    fn relaxed_flag_is_required_outside_regime() {
        let spec = ConstructionSpec::sparse_kk(4096, 1.2, 0.5, 4, 8);
        assert!(matches!(build_sparse_kk_extremal(&spec), Err(Error::InvalidArgument(_))));
        let rep = build_sparse_kk_extremal(&spec.relaxed(true)).unwrap();
        assert_eq!(rep.ell, 309);
        assert_eq!(rep.untrimmed_size, 309 * 70);
        assert_eq!(rep.family.len(), 21619);
        assert!(rep.relaxed);
    }

    #[test]
    fn three_r_above_k_is_rejected() {
        let spec = ConstructionSpec::sparse_kk(100, 1.5, 1.0, 4, 6).relaxed(true);
        assert!(build_sparse_kk_extremal(&spec).is_err());
    }

    #[test]
    fn failure_reports_histogram() {
        // two 6-sets in 8 vertices always meet in at least 4
        let spec = ConstructionSpec::sparse_kk(8, 1.0, 1.0, 3, 6)
            .with_ell(3)
            .relaxed(true)
            .with_max_retries(2);
        match build_sparse_kk_extremal(&spec) {
            Err(Error::ConstructionFailure { attempts, histogram, .. }) => {
                assert_eq!(attempts, 3);
                assert_eq!(histogram.iter().sum::<u64>(), 9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tiny_exact_wp() {
        let spec = ConstructionSpec::sparse_kk(12, 1.0, 0.5, 3, 4).with_ell(3).relaxed(true);
        let rep = build_sparse_kk_extremal(&spec).unwrap();
        let st = verify_wp_upper(&rep, WpMode::Exact, 0).unwrap();
        assert_eq!(st.bound, 288.0);
        assert!(st.exact && st.holds);
        for i in 0..=3 {
            assert!(verify_shadow_upper(&rep, i).unwrap().holds);
        }
        let full = ConstructionSpec { alpha: 1.0, ..spec };
        let rep = build_sparse_kk_extremal(&full).unwrap();
        let st = verify_wp_upper(&rep, WpMode::Exact, 0).unwrap();
        assert_eq!(st.value, rep.family.len() as u64);
    }
}
