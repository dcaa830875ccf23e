//! Union of power sets of random `x`-sets.
//!
//! The family is down-closed, so its trace on a window `I` is the set of its
//! members inside `I`. Each member is stored once, as a bit of the local
//! subset mask of the first random set containing it; the trace on `I` is then
//! a sum over sets of `popcount(owned_j & subsets_of(S_j ∩ I))`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{per_trial, random_sets, ConstructionSpec, SampleSummary};
use crate::binomials::mu;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::sampling::{rng_from_seed, sample_subset};

/// Largest set size of the compact representation.
pub const MAX_SET_SIZE: usize = 10;
/// Largest vertex count of the compact representation.
pub const MAX_VERTICES: usize = 4096;

/// `⋃_j 2^{S_j}` in compact form.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceUbFamily {
    n: usize,
    x: usize,
    sets: Vec<Vec<usize>>,
    words: usize,
    /// `words` mask words per set over its `2^x` local subsets.
    owned: Vec<u64>,
    size: u64,
}

fn subset_key(set: &[usize], local: usize) -> u128 {
    let mut key = (local.count_ones() as u128) << 120;
    let mut shift = 0;
    for (b, &v) in set.iter().enumerate() {
        if local >> b & 1 == 1 {
            key |= (v as u128) << shift;
            shift += 12;
        }
    }
    key
}

impl TraceUbFamily {
    /// Unions the power sets of `sets`, which must all have the same size.
    pub fn from_sets(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "power-set families support n <= {MAX_VERTICES}, got {n}"
            )));
        }
        let x = sets.first().map_or(0, Vec::len);
        if x > MAX_SET_SIZE {
            return Err(Error::Capacity(format!(
                "power-set families support sets of size <= {MAX_SET_SIZE}, got {x}"
            )));
        }
        for s in &sets {
            if s.len() != x || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= n) {
                return Err(invalid("sets must be sorted, distinct, in range and of equal size"));
            }
        }
        let local_count = 1usize << x;
        let words = local_count.div_ceil(64);
        let mut owned = vec![0u64; sets.len() * words];
        let mut seen: HashSet<u128> = HashSet::with_capacity(sets.len() * local_count);
        let mut size = 0;
        for (j, s) in sets.iter().enumerate() {
            for local in 0..local_count {
                if seen.insert(subset_key(s, local)) {
                    owned[j * words + local / 64] |= 1 << (local % 64);
                    size += 1;
                }
            }
        }
        Ok(Self {
            n,
            x,
            sets,
            words,
            owned,
            size,
        })
    }

    /// The compact form of `h` when `h` is the union of the power sets of its
    /// largest members, all of one size at most [`MAX_SET_SIZE`].
    pub fn from_down_closed(h: &Hypergraph) -> Option<Self> {
        let top = h.max_edge_size();
        if h.is_empty() || top > MAX_SET_SIZE || h.n() > MAX_VERTICES || !h.is_down_closed() {
            return None;
        }
        let sets = h.layer(top).edge_vectors();
        let compact = Self::from_sets(h.n(), sets).ok()?;
        // the closure of the top layer sits inside h, so equal sizes mean equal families
        (compact.len() == h.len() as u64).then_some(compact)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_size(&self) -> usize {
        self.x
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// `|F|`.
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        let mut edges = Vec::with_capacity(self.size as usize);
        for (j, s) in self.sets.iter().enumerate() {
            for local in 0..1usize << self.x {
                if self.owned[j * self.words + local / 64] >> (local % 64) & 1 == 1 {
                    edges.push(VertexSet::from_vertices(
                        s.iter().enumerate().filter(|(b, _)| local >> b & 1 == 1).map(|(_, &v)| v),
                    ));
                }
            }
        }
        Hypergraph::new(self.n, edges)
    }

    /// Mask words of `{ b : b ⊆ a }` for every local mask `a`.
    fn subset_table(&self) -> Vec<u64> {
        let local_count = 1usize << self.x;
        let mut table = vec![0u64; local_count * self.words];
        for a in 0..local_count {
            let mut b = a;
            loop {
                table[a * self.words + b / 64] |= 1 << (b % 64);
                if b == 0 {
                    break;
                }
                b = (b - 1) & a;
            }
        }
        table
    }

    fn incidence(&self) -> Vec<Vec<(u32, u16)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (j, s) in self.sets.iter().enumerate() {
            for (b, &v) in s.iter().enumerate() {
                inc[v].push((j as u32, 1u16 << b));
            }
        }
        inc
    }

    /// `(|F_I|, Σ_j 2^{|S_j ∩ I|})` for the given local masks.
    fn evaluate(&self, table: &[u64], local: &[u16]) -> (u64, u64) {
        let w = self.words;
        let mut trace = 0u64;
        let mut x_stat = 0u64;
        for (j, &a) in local.iter().enumerate() {
            let a = a as usize;
            x_stat += 1 << a.count_ones();
            let own = &self.owned[j * w..(j + 1) * w];
            let sub = &table[a * w..(a + 1) * w];
            trace += own
                .iter()
                .zip(sub)
                .map(|(o, s)| (o & s).count_ones() as u64)
                .sum::<u64>();
        }
        (trace, x_stat)
    }

    fn local_masks(&self, incidence: &[Vec<(u32, u16)>], window: &[usize]) -> Vec<u16> {
        let mut local = vec![0u16; self.sets.len()];
        for &v in window {
            for &(j, bit) in &incidence[v] {
                local[j as usize] |= bit;
            }
        }
        local
    }

    /// `|F_I|` for one window.
    pub fn trace_on(&self, window: &[usize]) -> Result<u64> {
        if let Some(&v) = window.iter().find(|&&v| v >= self.n) {
            return Err(invalid(format!("vertex {v} out of range for n = {}", self.n)));
        }
        let mut sorted = window.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let local = self.local_masks(&self.incidence(), &sorted);
        Ok(self.evaluate(&self.subset_table(), &local).0)
    }

    /// Trace sizes and `X = Σ_j 2^{|S_j ∩ I|}` over random windows of `size` vertices.
    pub fn sample_windows(&self, size: usize, trials: u64, seed: u64) -> Result<Vec<(u64, u64)>> {
        if size > self.n {
            return Err(invalid(format!("window {size} exceeds n = {}", self.n)));
        }
        let table = self.subset_table();
        let incidence = self.incidence();
        Ok(per_trial(trials, seed, |s| {
            let mut rng = rng_from_seed(s);
            let window = sample_subset(self.n, size, &mut rng);
            let local = self.local_masks(&incidence, &window);
            self.evaluate(&table, &local)
        }))
    }
}

/// `(μ, x, ℓ)` with `x = ⌊(μ - 1) log n⌋` and `ℓ = ⌈2 n^r / 2^x⌉`.
pub fn trace_ub_parameters(n: usize, r: f64, alpha: f64) -> Result<(f64, usize, usize)> {
    let m = mu(r, alpha)?;
    let log_n = (n as f64).log2();
    let x = ((m - 1.0) * log_n + 1e-9).floor();
    if x < 1.0 {
        return Err(invalid(format!(
            "x = ⌊(μ - 1) log n⌋ = {x} must be at least 1 (μ = {m}, n = {n})"
        )));
    }
    let x = x as usize;
    Ok((m, x, default_ell(n, r, x)))
}

/// `⌈2 n^r / 2^x⌉`, snapped against round-off.
fn default_ell(n: usize, r: f64, x: usize) -> usize {
    let ell = 2.0 * (n as f64).powf(r) / (x as f64).exp2();
    (ell - 1e-9 * ell).ceil() as usize
}

/// A successful power-set build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceUbReport {
    pub spec: ConstructionSpec,
    pub mu: f64,
    pub x: usize,
    pub ell: usize,
    #[serde(skip)]
    pub family: Option<TraceUbFamily>,
    pub family_size: u64,
    pub target_size: u64,
    pub e1_holds: bool,
    pub retries_used: u32,
    pub attempt_seed: u64,
    /// `|F|` of every attempt, the last one successful.
    pub size_per_attempt: Vec<u64>,
}

impl TraceUbReport {
    pub fn family(&self) -> &TraceUbFamily {
        self.family.as_ref().expect("built reports carry their family")
    }

    /// `n^μ`.
    pub fn n_mu(&self) -> f64 {
        (self.spec.n as f64).powf(self.mu)
    }

    /// Trace and `X` statistics over random `⌊αn⌋`-windows.
    pub fn sample_trace_statistics(&self, trials: u64, seed: u64) -> Result<TraceSampleStats> {
        if trials == 0 {
            return Err(invalid("trials must be positive"));
        }
        let window = self.spec.window();
        let samples = self.family().sample_windows(window, trials, seed)?;
        let traces: Vec<f64> = samples.iter().map(|&(t, _)| t as f64).collect();
        let xs: Vec<f64> = samples.iter().map(|&(_, x)| x as f64).collect();
        let trace = SampleSummary::from_values(&traces);
        let x_stat = SampleSummary::from_values(&xs);
        let n_mu = self.n_mu();
        Ok(TraceSampleStats {
            window,
            max_trace: samples.iter().map(|&(t, _)| t).max().unwrap_or(0),
            trace,
            x_stat,
            x_mean_bound: 4.0 * n_mu,
            trace_bound: 8.0 * n_mu,
            x_mean_ok: x_stat.mean - x_stat.ci99_half_width <= 4.0 * n_mu,
            max_trace_ok: trace.max <= 8.0 * n_mu,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSampleStats {
    pub window: usize,
    pub max_trace: u64,
    pub trace: SampleSummary,
    /// `X = Σ_j 2^{|S_j ∩ I|}`.
    pub x_stat: SampleSummary,
    /// `4 n^μ`.
    pub x_mean_bound: f64,
    /// `8 n^μ`.
    pub trace_bound: f64,
    /// The 99% interval for `E(X)` reaches at or below `4 n^μ`.
    pub x_mean_ok: bool,
    pub max_trace_ok: bool,
}

/// Samples `ℓ` random `x`-sets and unions their power sets, retrying until `|F| >= n^r`.
pub fn build_trace_ub_family(spec: &ConstructionSpec) -> Result<TraceUbReport> {
    spec.check_common()?;
    let n = spec.n as f64;
    if !spec.relaxed && spec.r > n.sqrt() / n.log2() {
        return Err(invalid(format!(
            "need r <= √n / log n = {:.3}; pass relaxed to build outside this regime",
            n.sqrt() / n.log2()
        )));
    }
    let m = mu(spec.r, spec.alpha)?;
    let x = match spec.x {
        Some(x) => x,
        None => trace_ub_parameters(spec.n, spec.r, spec.alpha)?.1,
    };
    if x == 0 || x > spec.n {
        return Err(invalid(format!("need 1 <= x <= n, got x = {x}")));
    }
    let ell = spec.ell.unwrap_or_else(|| default_ell(spec.n, spec.r, x));
    let target_size = spec.target_edges();
    let mut sizes = Vec::new();
    for attempt in 0..=spec.max_retries {
        let seed = spec.attempt_seed(attempt);
        let family = TraceUbFamily::from_sets(spec.n, random_sets(spec.n, x, ell, seed))?;
        sizes.push(family.len());
        if family.len() >= target_size {
            return Ok(TraceUbReport {
                spec: spec.clone(),
                mu: m,
                x,
                ell,
                family_size: family.len(),
                family: Some(family),
                target_size,
                e1_holds: true,
                retries_used: attempt,
                attempt_seed: seed,
                size_per_attempt: sizes,
            });
        }
    }
    Err(Error::ConstructionFailure {
        attempts: spec.max_retries + 1,
        detail: format!("every attempt had fewer than n^r = {target_size} members"),
        histogram: sizes,
    })
}
