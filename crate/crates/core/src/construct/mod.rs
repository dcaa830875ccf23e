//! Randomized extremal constructions and their event checks.
//!
//! [`build_sparse_kk_extremal`] unions `k`-cliques on random `x`-sets and
//! [`build_trace_ub_family`] unions power sets of random `x`-sets. Both retry
//! with fresh derived seeds when their first event fails, and both are
//! bit-for-bit reproducible from the spec regardless of thread count.

mod chernoff;
mod sparse_kk;
mod trace_ub;

pub use chernoff::{chernoff_tail_check, BoundedSum, ChernoffCheck};
pub use sparse_kk::{
    build_sparse_kk_extremal, sampled_induced_counts, union_of_cliques, verify_shadow_upper, verify_wp_upper,
    ShadowCheck, SparseKkReport, WpMode, WpStatistics, EXACT_WP_MAX_N,
};
pub use trace_ub::{
    build_trace_ub_family, trace_ub_parameters, TraceSampleStats, TraceUbFamily, TraceUbReport,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypergraph::{trace_size, Hypergraph, VertexSet};
use crate::sampling::{derive_seed, rng_from_seed, sample_subset};

pub const DEFAULT_MAX_RETRIES: u32 = 16;

/// Parameters of one randomized build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub n: usize,
    pub r: f64,
    pub alpha: f64,
    /// Clique size; unused by the power-set construction.
    pub k: Option<usize>,
    /// Size of each random set; derived from `μ` for the power-set construction when absent.
    pub x: Option<usize>,
    /// Number of random sets; derived from the other parameters when absent.
    pub ell: Option<usize>,
    pub seed: u64,
    /// Rebuilds allowed after the first attempt fails its size event.
    pub max_retries: u32,
    /// Lifts the asymptotic-only constraints `x <= n^{1/6}`, `n <= α^k n^r`,
    /// `n^r / C(x, k) <= ℓ <= n / α^k` and `r <= √n / log n`.
    pub relaxed: bool,
}

impl ConstructionSpec {
    pub fn sparse_kk(n: usize, r: f64, alpha: f64, k: usize, x: usize) -> Self {
        Self {
            n,
            r,
            alpha,
            k: Some(k),
            x: Some(x),
            ell: None,
            seed: crate::sampling::DEFAULT_SEED,
            max_retries: DEFAULT_MAX_RETRIES,
            relaxed: false,
        }
    }

    pub fn trace_ub(n: usize, r: f64, alpha: f64) -> Self {
        Self {
            k: None,
            x: None,
            ..Self::sparse_kk(n, r, alpha, 0, 0)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn with_x(mut self, x: usize) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_max_retries(mut self, retries: u32) -> Self {
        self.max_retries = retries;
        self
    }

    pub fn relaxed(mut self, relaxed: bool) -> Self {
        self.relaxed = relaxed;
        self
    }

    /// `⌊αn⌋`, the window size of the sparsity and trace events.
    pub fn window(&self) -> usize {
        (self.alpha * self.n as f64).floor() as usize
    }

    /// `⌈n^r⌉`, with values within `1e-9` relative of an integer taken as that integer.
    pub fn target_edges(&self) -> u64 {
        let v = (self.n as f64).powf(self.r);
        let nearest = v.round();
        if (v - nearest).abs() <= 1e-9 * v {
            nearest as u64
        } else {
            v.ceil() as u64
        }
    }

    fn check_common(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid("need n >= 2"));
        }
        if !(self.r >= 1.0 && self.r.is_finite()) {
            return Err(invalid(format!("need finite r >= 1, got {}", self.r)));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(invalid(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        Ok(())
    }

    /// Seed of the given build attempt; attempt 0 uses the spec seed itself.
    pub(crate) fn attempt_seed(&self, attempt: u32) -> u64 {
        if attempt == 0 {
            self.seed
        } else {
            derive_seed(self.seed, (1u64 << 32) | attempt as u64)
        }
    }
}

/// `ell` independent uniform `x`-subsets of `0..n`, each sorted, one derived seed per set.
pub(crate) fn random_sets(n: usize, x: usize, ell: usize, seed: u64) -> Vec<Vec<usize>> {
    (0..ell)
        .into_par_iter()
        .map(|j| {
            let mut rng = rng_from_seed(derive_seed(seed, j as u64));
            let mut s = sample_subset(n, x, &mut rng);
            s.sort_unstable();
            s
        })
        .collect()
}

/// Summary of a sampled statistic over independent trials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub trials: u64,
    pub max: f64,
    pub mean: f64,
    /// Half-width of the normal 99% confidence interval for the mean.
    pub ci99_half_width: f64,
}

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

impl SampleSummary {
    pub fn from_values(values: &[f64]) -> Self {
        let t = values.len() as f64;
        let mean = values.iter().sum::<f64>() / t;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (t - 1.0)
        } else {
            0.0
        };
        Self {
            trials: values.len() as u64,
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            ci99_half_width: Z99 * (var / t).sqrt(),
        }
    }
}

/// Values of `f(trial_seed)` for `trials` derived seeds, in trial order.
pub(crate) fn per_trial<T, F>(trials: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(derive_seed(seed, t)))
        .collect()
}

/// `|F_I|` for each of `trials` random `size`-windows, in trial order.
pub fn sampled_trace_sizes(f: &Hypergraph, size: usize, trials: u64, seed: u64) -> Result<Vec<u64>> {
    if size > f.n() {
        return Err(invalid(format!("window {size} exceeds n = {}", f.n())));
    }
    Ok(per_trial(trials, seed, |s| {
        let mut rng = rng_from_seed(s);
        let window = VertexSet::from_vertices(sample_subset(f.n(), size, &mut rng));
        trace_size(f, &window).expect("window in range") as u64
    }))
}
