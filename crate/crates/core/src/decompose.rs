//! Regularization, heavy links and the sparse Kruskal-Katona bounds.
//!
//! Every constant of the sparse bound is exposed explicitly. At desk scale the
//! constants are astronomically large, so evaluators report a `vacuous` flag
//! instead of failing when the bound drops below one.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::binomials::{binom_real_clamped, invert_binomial, invert_binomial_upper};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{induced, restricted, wp, Hypergraph, VertexSet, VertexTuple};

/// Tolerance for snapping a real exponent to an integer before `⌈·⌉`.
pub const EXPONENT_SNAP: f64 = 1e-9;

/// `⌈v⌉`, treating values within [`EXPONENT_SNAP`] of an integer as that integer.
pub fn ceil_snapped(v: f64) -> u32 {
    let nearest = v.round();
    if (v - nearest).abs() <= EXPONENT_SNAP {
        nearest as u32
    } else {
        v.ceil() as u32
    }
}

/// The induced subgraph left after repeatedly deleting a minimum-degree vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularizationResult {
    /// Induced on `kept`, relabeled to `0..kept.len()`.
    pub subgraph: Hypergraph,
    /// Original indices of the surviving vertices, ascending.
    pub kept: Vec<usize>,
    pub removed_order: Vec<usize>,
    /// `|E'| / (2 |V'| log |V|)`.
    pub min_degree_bound: f64,
    pub original_vertices: usize,
    pub original_edges: usize,
}

/// The three guarantees of the regularization step, evaluated on a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularizationGuarantees {
    /// `|E'| / |V'| >= |E| / |V|`.
    pub density_kept: bool,
    /// Every surviving vertex has degree at least `min_degree_bound`.
    pub min_degree: bool,
    /// `|E'| > |E| / 2`.
    pub keeps_half: bool,
}

impl RegularizationGuarantees {
    pub fn all(&self) -> bool {
        self.density_kept && self.min_degree && self.keeps_half
    }
}

impl RegularizationResult {
    pub fn guarantees(&self) -> RegularizationGuarantees {
        let e1 = self.subgraph.len() as u128;
        let v1 = self.kept.len() as u128;
        let e0 = self.original_edges as u128;
        let v0 = self.original_vertices as u128;
        RegularizationGuarantees {
            density_kept: e1 * v0 >= e0 * v1,
            min_degree: self
                .subgraph
                .degrees()
                .iter()
                .all(|&d| d as f64 >= self.min_degree_bound),
            keeps_half: 2 * e1 > e0,
        }
    }
}

/// Deletes a minimum-degree vertex (smallest index on ties) while some vertex
/// has degree below `|E_i| / (2 |V_i| log |V|)`.
///
/// Degrees are maintained incrementally as edges die.
pub fn regularize(f: &Hypergraph) -> Result<RegularizationResult> {
    if f.is_empty() {
        return Err(invalid("regularize needs a non-empty family"));
    }
    let n = f.n();
    if n < 2 {
        return Err(invalid("regularize needs at least two vertices"));
    }
    let log_n = (n as f64).log2();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, e) in f.edges().iter().enumerate() {
        for v in e.iter() {
            incident[v].push(idx);
        }
    }
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut by_degree: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut edge_alive = vec![true; f.len()];
    let mut edges_left = f.len();
    let mut removed_order = Vec::new();

    loop {
        let vertices_left = by_degree.len();
        let bound = edges_left as f64 / (2.0 * vertices_left as f64 * log_n);
        let &(d, v) = by_degree.first().expect("at least one vertex remains");
        if d as f64 >= bound || vertices_left == 1 {
            break;
        }
        by_degree.remove(&(d, v));
        removed_order.push(v);
        for &idx in &incident[v] {
            if !edge_alive[idx] {
                continue;
            }
            edge_alive[idx] = false;
            edges_left -= 1;
            for u in f.edges()[idx].iter().filter(|&u| u != v) {
                by_degree.remove(&(degree[u], u));
                degree[u] -= 1;
                by_degree.insert((degree[u], u));
            }
        }
    }

    let mut kept: Vec<usize> = by_degree.iter().map(|&(_, v)| v).collect();
    kept.sort_unstable();
    let window = VertexSet::from_vertices(kept.iter().copied());
    let subgraph = induced(f, &window)?;
    let min_degree_bound = subgraph.len() as f64 / (2.0 * kept.len() as f64 * log_n);
    Ok(RegularizationResult {
        subgraph,
        kept,
        removed_order,
        min_degree_bound,
        original_vertices: n,
        original_edges: f.len(),
    })
}

/// Vertices whose degree is at least `threshold`, ascending.
fn vertices_of_degree_at_least(f: &Hypergraph, threshold: f64) -> Vec<usize> {
    f.degrees()
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d as f64 >= threshold)
        .map(|(v, _)| v)
        .collect()
}

fn check_window(f: &Hypergraph, i: usize) -> Result<()> {
    if !(0 < i && i < f.n()) {
        return Err(invalid(format!("need 0 < i < n, got i = {i}, n = {}", f.n())));
    }
    Ok(())
}

/// All vertices of degree at least `|F| / (2n)`.
///
/// Requires `wp(F, i) <= |F| / 2`, which guarantees more than `i` of them.
pub fn heavy_vertices(f: &Hypergraph, i: usize) -> Result<Vec<usize>> {
    check_window(f, i)?;
    let limit = f.len() as f64 / 2.0;
    let value = wp(f, i)?;
    if value as f64 > limit {
        return Err(Error::WpHypothesis { wp: value, limit });
    }
    Ok(vertices_of_degree_at_least(
        f,
        f.len() as f64 / (2.0 * f.n() as f64),
    ))
}

/// The `s`-tuples found by the heavy-link recursion and their common link-size floor.
#[derive(Clone, Debug, PartialEq)]
pub struct HeavyLinkFamily {
    /// Sorted lexicographically.
    pub tuples: Vec<VertexTuple>,
    /// `|F| / (2n)^s`.
    pub threshold: f64,
}

/// Tuples `U ∈ V^s` with `|F(U)| >= |F| / (2n)^s`.
///
/// Each heavy `(s-1)`-tuple `U` is extended by every vertex of degree at least
/// `|F^U| / (2n)` in `F^U`, the edges containing `U`. Entries may repeat.
/// Requires `wp(F, i) <= |F| / (2^s n^{s-1})`, which guarantees `i^s` tuples.
pub fn heavy_tuples(f: &Hypergraph, s: usize, i: usize) -> Result<HeavyLinkFamily> {
    if s == 0 {
        return Ok(HeavyLinkFamily {
            tuples: vec![VertexTuple::empty()],
            threshold: f.len() as f64,
        });
    }
    check_window(f, i)?;
    let n = f.n() as f64;
    let limit = f.len() as f64 / (2f64.powi(s as i32) * n.powi(s as i32 - 1));
    let value = wp(f, i)?;
    if value as f64 > limit {
        return Err(Error::WpHypothesis { wp: value, limit });
    }
    let mut level = vec![VertexTuple::empty()];
    for _ in 0..s {
        let mut next = Vec::new();
        for tuple in &level {
            let sub = restricted(f, &tuple.distinct());
            let threshold = sub.len() as f64 / (2.0 * n);
            for v in vertices_of_degree_at_least(&sub, threshold) {
                next.push(tuple.extended(v));
            }
        }
        level = next;
    }
    level.sort_unstable_by(|a, b| a.entries().cmp(b.entries()));
    Ok(HeavyLinkFamily {
        tuples: level,
        threshold: f.len() as f64 / (2.0 * n).powi(s as i32),
    })
}

/// Number of maps from `t` positions onto a fixed `j`-set, `j! S(t, j)`.
fn surjections(t: usize, j: usize) -> f64 {
    // inclusion-exclusion: Σ (-1)^a C(j, a) (j - a)^t
    let mut total = 0.0;
    let mut choose = 1.0;
    for a in 0..=j {
        let term = choose * ((j - a) as f64).powi(t as i32);
        total += if a % 2 == 0 { term } else { -term };
        choose = choose * (j - a) as f64 / (a + 1) as f64;
    }
    total
}

/// `i^{-t} Σ_{U ∈ V^t} C(x_U, i - |U|)` with `|F(U)| = C(x_U, k - |U|)`.
///
/// Tuples are grouped by their set of distinct entries. A tuple whose link is
/// empty contributes nothing. With `t = 0` this is the classical bound
/// `C(y, i)` for `|F| = C(y, k)`.
pub fn collect_link_shadow_lower(f: &Hypergraph, t: usize, i: usize) -> Result<f64> {
    let k = f
        .uniformity()
        .ok_or_else(|| invalid("collect_link_shadow_lower needs a non-empty uniform family"))?;
    if !(t <= i && i <= k) {
        return Err(invalid(format!("need t <= i <= k, got t={t}, i={i}, k={k}")));
    }
    let mut total = 0.0;
    for j in 0..=t.min(k) {
        let weight = surjections(t, j);
        if weight == 0.0 {
            continue;
        }
        let mut codegree: HashMap<VertexSet, u64> = HashMap::new();
        for e in f.edges() {
            for sub in e.subsets_of_size(j) {
                *codegree.entry(sub).or_insert(0) += 1;
            }
        }
        for &link_size in codegree.values() {
            let x = if k == j {
                0.0
            } else {
                invert_binomial(link_size as f64, k - j)?
            };
            total += weight * binom_real_clamped(x, i - j).0;
        }
    }
    Ok(total * (i as f64).powi(-(t as i32)))
}

/// The constant bundle of the sparse Kruskal-Katona bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseKKParams {
    pub n: usize,
    pub r: f64,
    pub alpha: f64,
    pub k: usize,
    /// Solves `C(x, k - t) n = wp` unless overridden.
    pub x: f64,
    pub s: u32,
    pub t: u32,
    /// `(8k)^⌈2r⌉ / α^⌈r⌉`.
    pub c: f64,
    /// `(8k/α)^⌈4r⌉ log n`.
    pub c_err: f64,
    pub wp: u64,
    pub f_size: u64,
}

/// A bound value with its usefulness flags.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: f64,
    /// The value is below one, so it says nothing about a non-empty shadow.
    pub vacuous: bool,
    /// A binomial with argument below its lower index was clamped to zero.
    pub clamped: bool,
}

impl BoundValue {
    fn new(value: f64, clamped: bool) -> Self {
        Self {
            value,
            vacuous: value < 1.0,
            clamped,
        }
    }
}

/// Computes `c`, `s`, `t` and `C` for a `k`-graph on `n` vertices with
/// `f_size` edges and `wp(F, αn) = wp_value`.
///
/// `s` starts from `⌈log(|F|/σ) / log(2n)⌉` with `σ = c wp`, clamped at zero,
/// and is then moved to the smallest value with `|F|/(2n)^s < σ`. When `r` is
/// not given it is `log |F| / log n`.
pub fn sparse_kk_params(
    n: usize,
    r: Option<f64>,
    alpha: f64,
    k: usize,
    wp_value: u64,
    f_size: u64,
) -> Result<SparseKKParams> {
    if n < 2 {
        return Err(invalid("need n >= 2"));
    }
    if k == 0 {
        return Err(invalid("need k >= 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if wp_value == 0 || f_size == 0 {
        return Err(invalid("wp and |F| must be positive"));
    }
    let nf = n as f64;
    let r = r.unwrap_or_else(|| (f_size as f64).ln() / nf.ln());
    if r.is_nan() || r < 1.0 - EXPONENT_SNAP {
        return Err(Error::Contract(format!(
            "the sparse bound needs |F| >= n (r >= 1), got r = {r}"
        )));
    }
    let ceil_r = ceil_snapped(r);
    let c = (8.0 * k as f64).powi(ceil_snapped(2.0 * r) as i32) / alpha.powi(ceil_r as i32);
    let c_err = (8.0 * k as f64 / alpha).powi(ceil_snapped(4.0 * r) as i32) * nf.log2();
    let sigma = c * wp_value as f64;
    let f = f_size as f64;
    let base = 2.0 * nf;

    let mut s = ((f / sigma).log2() / base.log2()).ceil().max(0.0) as u32;
    let level = |s: u32| f / base.powi(s as i32);
    while s > 0 && level(s - 1) < sigma {
        s -= 1;
    }
    while level(s) >= sigma {
        s += 1;
    }
    if !(level(s) < sigma && (s == 0 || sigma <= level(s - 1))) {
        return Err(Error::Contract(format!(
            "s = {s} does not satisfy |F|/(2n)^s < c wp <= |F|/(2n)^(s-1)"
        )));
    }
    let t = s + 1;
    if !(t <= ceil_r && ceil_r as usize <= k) {
        return Err(Error::Contract(format!(
            "need t <= ⌈r⌉ <= k, got t = {t}, ⌈r⌉ = {ceil_r}, k = {k} (wp = {wp_value}, |F| = {f_size}, n = {n})"
        )));
    }
    let x = if (t as usize) < k {
        invert_binomial_upper(wp_value as f64 / nf, k - t as usize)?
    } else {
        // C(x, 0) = 1 for every x; the ratio no longer depends on x
        k as f64
    };
    Ok(SparseKKParams {
        n,
        r,
        alpha,
        k,
        x,
        s,
        t,
        c,
        c_err,
        wp: wp_value,
        f_size,
    })
}

impl SparseKKParams {
    pub fn with_x(mut self, x: f64) -> Self {
        self.x = x;
        self
    }

    /// `wp(F, αn) <= min{C(x, k - t) n, |F| / 2}`.
    pub fn hypothesis_holds(&self) -> bool {
        let (bx, _) = binom_real_clamped(self.x, self.k - self.t as usize);
        let wp = self.wp as f64;
        wp <= bx * self.n as f64 && 2.0 * wp <= self.f_size as f64
    }

    fn log_n(&self) -> f64 {
        (self.n as f64).log2()
    }

    /// The constant `C' = (8k/(αγ))^⌈5r⌉ log n` of the expected-trace bound.
    pub fn expected_trace_constant(&self, gamma: f64) -> f64 {
        (8.0 * self.k as f64 / (self.alpha * gamma)).powi(ceil_snapped(5.0 * self.r) as i32)
            * self.log_n()
    }

    /// The intro-form constant `(8k/α)^⌈5r⌉ log n`.
    pub fn intro_constant(&self) -> f64 {
        (8.0 * self.k as f64 / self.alpha).powi(ceil_snapped(5.0 * self.r) as i32) * self.log_n()
    }

    /// `(1 / C) C(x, i - t) / C(x, k - t) |F|` for `t <= i <= k`.
    pub fn bound(&self, i: usize) -> Result<BoundValue> {
        sparse_kk_bound(self, i)
    }

    /// The intro form `(1 / C) C(x, i) / C(x, k) |F|` for `r + 1 <= i <= k`,
    /// with `C = (8k/α)^⌈5r⌉ log n` and the given `x` (meant to satisfy `x >= 2k`).
    pub fn intro_bound(&self, x: f64, i: usize) -> Result<BoundValue> {
        if !((i as f64) >= self.r + 1.0 - EXPONENT_SNAP && i <= self.k) {
            return Err(invalid(format!(
                "need r + 1 <= i <= k, got i = {i}, r = {}, k = {}",
                self.r, self.k
            )));
        }
        let (num, c1) = binom_real_clamped(x, i);
        let (den, c2) = binom_real_clamped(x, self.k);
        let value = num / den * self.f_size as f64 / self.intro_constant();
        Ok(BoundValue::new(value, c1 || c2))
    }
}

/// `(1 / C) C(x, i - t) / C(x, k - t) |F|` for `t <= i <= k`.
pub fn sparse_kk_bound(params: &SparseKKParams, i: usize) -> Result<BoundValue> {
    let t = params.t as usize;
    if !(t <= i && i <= params.k) {
        return Err(invalid(format!(
            "need t <= i <= k, got t = {t}, i = {i}, k = {}",
            params.k
        )));
    }
    let (num, c1) = binom_real_clamped(params.x, i - t);
    let (den, c2) = binom_real_clamped(params.x, params.k - t);
    let value = num / den * params.f_size as f64 / params.c_err;
    Ok(BoundValue::new(value, c1 || c2))
}

/// `|F| / (C' B^{1 - log(1+γ)})` for an explicit constant `C'`.
pub fn expected_trace_formula(f_size: f64, c_prime: f64, b: f64, gamma: f64) -> f64 {
    f_size / (c_prime * b.powf(1.0 - (1.0 + gamma).log2()))
}

/// Lower bound on the expected trace on a uniformly random `⌊γn⌋`-set.
///
/// Requires `k <= √(γn)` and `wp(F, αn) <= min{Bn, |F|/2}`; in particular
/// `γ = 0` is rejected.
pub fn expected_trace_lower(params: &SparseKKParams, b: f64, gamma: f64) -> Result<BoundValue> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(invalid(format!("gamma must lie in [0, 1], got {gamma}")));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(invalid(format!("B must be finite and positive, got {b}")));
    }
    let q = gamma * params.n as f64;
    if (params.k as f64) > q.sqrt() {
        return Err(Error::Contract(format!(
            "need k <= √(γn), got k = {}, γn = {q}",
            params.k
        )));
    }
    let wp = params.wp as f64;
    if wp > b * params.n as f64 || 2.0 * wp > params.f_size as f64 {
        return Err(Error::Contract(format!(
            "need wp <= min(Bn, |F|/2), got wp = {wp}, Bn = {}, |F| = {}",
            b * params.n as f64,
            params.f_size
        )));
    }
    let value = expected_trace_formula(
        params.f_size as f64,
        params.expected_trace_constant(gamma),
        b,
        gamma,
    );
    Ok(BoundValue::new(value, false))
}

/// The trace lower bound `n^μ / C''` with `C'' = (8 r log n / α²)^⌈6r⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceLowerBound {
    pub mu: f64,
    /// `log2 C''`; the constant itself overflows for moderate `r`.
    pub log2_constant: f64,
    pub bound: f64,
    /// `log_n C''`, the exponent given up to the constant.
    pub exponent_loss: f64,
    pub vacuous: bool,
}

pub fn trace_tau_lower(n: usize, r: f64, alpha: f64) -> Result<TraceLowerBound> {
    if n < 2 {
        return Err(invalid("need n >= 2"));
    }
    let mu = crate::binomials::mu(r, alpha)?;
    let log_n = (n as f64).log2();
    let log2_constant =
        ceil_snapped(6.0 * r) as f64 * (8.0 * r * log_n / (alpha * alpha)).log2();
    let bound = (mu * log_n - log2_constant).exp2();
    Ok(TraceLowerBound {
        mu,
        log2_constant,
        bound,
        exponent_loss: log2_constant / log_n,
        vacuous: bound < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomials::binom_real;
    use crate::hypergraph::shadow_size;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edge_lists(n, edges).unwrap()
    }

    #[test]
    fn regularize_examples() {
        let star = hg(5, &[&[0, 1], &[0, 2], &[0, 3], &[0, 4]]);
        let res = regularize(&star).unwrap();
        assert!(res.removed_order.is_empty());
        assert_eq!(res.subgraph, star);
        assert!(res.guarantees().all());

        let k4 = Hypergraph::complete(4, 2);
        assert!(regularize(&k4).unwrap().removed_order.is_empty());

        let with_isolated = hg(5, &[&[0, 1], &[1, 2], &[0, 2], &[2, 3]]);
        let res = regularize(&with_isolated).unwrap();
        assert_eq!(res.removed_order[0], 4);
        assert!(res.guarantees().all());

        assert!(regularize(&Hypergraph::empty(4)).is_err());
    }

    #[test]
    fn heavy_vertices_examples() {
        let k4 = Hypergraph::complete(4, 2);
        assert_eq!(heavy_vertices(&k4, 2).unwrap(), vec![0, 1, 2, 3]);
        let matching = hg(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        assert_eq!(heavy_vertices(&matching, 2).unwrap().len(), 6);
        let k4_plus = Hypergraph::new(5, k4.edges().to_vec()).unwrap();
        assert!(matches!(
            heavy_vertices(&k4_plus, 4),
            Err(Error::WpHypothesis { wp: 6, .. })
        ));
        assert!(heavy_vertices(&k4, 0).is_err());
    }

    #[test]
    fn heavy_tuples_examples() {
        let k4 = Hypergraph::complete(4, 2);
        let one = heavy_tuples(&k4, 1, 2).unwrap();
        let flat: Vec<usize> = one.tuples.iter().map(|t| t.entries()[0]).collect();
        assert_eq!(flat, heavy_vertices(&k4, 2).unwrap());

        let zero = heavy_tuples(&k4, 0, 2).unwrap();
        assert_eq!(zero.tuples, vec![VertexTuple::empty()]);
        assert_eq!(zero.threshold, 6.0);

        let k83 = Hypergraph::complete(8, 3);
        let fam = heavy_tuples(&k83, 2, 2).unwrap();
        assert!(fam.tuples.len() >= 4);
        assert_eq!(fam.threshold, 56.0 / 256.0);
        for u in &fam.tuples {
            assert!(k83.codegree(&u.distinct()) as f64 >= fam.threshold);
        }
        assert!(fam.tuples.windows(2).all(|w| w[0].entries() < w[1].entries()));
    }

    #[test]
    fn link_shadow_examples() {
        let k63 = Hypergraph::complete(6, 3);
        let y = invert_binomial(20.0, 3).unwrap();
        let t0 = collect_link_shadow_lower(&k63, 0, 2).unwrap();
        assert!((t0 - binom_real(y, 2)).abs() <= 1e-6 * t0);
        let t1 = collect_link_shadow_lower(&k63, 1, 2).unwrap();
        assert!(t1 <= shadow_size(&k63, 2) as f64 + 1e-9);

        let single = hg(6, &[&[1, 3, 4]]);
        for t in 0..=3 {
            for i in t..=3 {
                let b = collect_link_shadow_lower(&single, t, i).unwrap();
                assert!(b <= binom_real(3.0, i) + 1e-9, "t={t} i={i} b={b}");
            }
        }
        assert!(collect_link_shadow_lower(&k63, 3, 2).is_err());
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(0, 0), 1.0);
        assert_eq!(surjections(3, 0), 0.0);
        assert_eq!(surjections(3, 1), 1.0);
        assert_eq!(surjections(3, 2), 6.0);
        assert_eq!(surjections(3, 3), 6.0);
    }

    #[test]
    fn sparse_params_constants() {
        let p = sparse_kk_params(1024, Some(1.0), 0.5, 3, 1, 1024).unwrap();
        assert_eq!(p.c, 1152.0);
        assert_eq!(p.c_err, 53_084_160.0);
        assert!(p.t <= 1);

        // wp >= |F|/(2c) puts s at zero
        let p = sparse_kk_params(1024, Some(1.0), 0.5, 3, 1, 1024).unwrap();
        assert_eq!((p.s, p.t), (0, 1));
        let b = p.bound(3).unwrap();
        assert_eq!(b.value, 1024.0 / p.c_err);
        assert!(b.vacuous);
        let b = p.bound(1).unwrap();
        let expect = 1024.0 / (p.c_err * binom_real(p.x, 2));
        assert!((b.value - expect).abs() <= 1e-12 * expect);
        assert!(p.bound(0).is_err());
    }

    #[test]
    fn s_is_smallest_strict_level() {
        // c = 24^4 and |F| = 2^20, so |F| >= c but |F| / 2048 < c
        let p = sparse_kk_params(1024, None, 1.0, 3, 1, 1 << 20).unwrap();
        assert_eq!(p.r, 2.0);
        assert_eq!(p.c, 331_776.0);
        assert_eq!((p.s, p.t), (1, 2));
        // exactly on a level: |F| / (2n)^s = c wp must push s up
        let p = sparse_kk_params(1024, Some(2.0), 1.0, 3, 1, 331_776).unwrap();
        assert_eq!(p.s, 1);
        assert!(matches!(
            sparse_kk_params(16, None, 1.0, 3, 1, 8),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn expected_trace_examples() {
        let p = sparse_kk_params(1024, Some(1.0), 0.5, 3, 1, 1024).unwrap();
        let at_one = expected_trace_lower(&p, 4.0, 1.0).unwrap();
        assert_eq!(at_one.value, 1024.0 / p.expected_trace_constant(1.0));
        assert!(matches!(
            expected_trace_lower(&p, 4.0, 0.0),
            Err(Error::Contract(_))
        ));
        assert_eq!(expected_trace_formula(100.0, 5.0, 4.0, 0.0), 100.0 / 20.0);
    }

    #[test]
    fn tau_lower_examples() {
        let b = trace_tau_lower(1024, 2.0, 0.5).unwrap();
        assert!((b.mu - 1.706695).abs() < 1e-6);
        assert!(b.vacuous);
        let b = trace_tau_lower(1 << 20, 1.0, 1.0).unwrap();
        assert_eq!(b.mu, 1.0);
        let c = (8.0 * 20.0f64).powi(6);
        assert!((b.bound - (1u64 << 20) as f64 / c).abs() <= 1e-9 * b.bound);
    }

    #[test]
    fn snapping() {
        assert_eq!(ceil_snapped(2.0000000001), 2);
        assert_eq!(ceil_snapped(2.1), 3);
        assert_eq!(ceil_snapped(1.2 * 5.0), 6);
    }
}
