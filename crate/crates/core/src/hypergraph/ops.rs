use std::cell::RefCell;
use std::collections::HashSet;

use super::enumerate::{argmax_index_subsets, argmax_word_subsets, binomial_u128, next_colex};
use super::{DenseMask, Hypergraph, VertexSet, VertexTuple};
use crate::error::{invalid, Error, Result};
use crate::sampling::{rng_from_seed, sample_subset};

/// Largest vertex count accepted by the exhaustive maximizations.
pub const MAX_EXHAUSTIVE_N: usize = 4096;
/// Largest number of windows an exhaustive maximization will scan.
pub const MAX_EXHAUSTIVE_WINDOWS: u128 = 1 << 40;
/// Largest edge size for which a power set fits a mask word.
pub const MAX_CLOSURE_EDGE: usize = 62;
const MAX_CLOSURE_MEMBERS: u128 = 1 << 26;

thread_local! {
    static SCRATCH: RefCell<Vec<u64>> = const { RefCell::new(Vec::new()) };
}

fn distinct_projections(words: &[u64], window: u64) -> u64 {
    SCRATCH.with(|cell| {
        let mut buf = cell.borrow_mut();
        buf.clear();
        buf.extend(words.iter().map(|e| e & window));
        buf.sort_unstable();
        buf.dedup();
        buf.len() as u64
    })
}

fn check_exhaustive(f: &Hypergraph, k: usize, what: &str) -> Result<()> {
    if k > f.n() {
        return Err(invalid(format!("{what}: size {k} exceeds n = {}", f.n())));
    }
    if f.n() > MAX_EXHAUSTIVE_N {
        return Err(Error::Capacity(format!(
            "{what}: exhaustive search needs n <= {MAX_EXHAUSTIVE_N}, got {}",
            f.n()
        )));
    }
    let windows = binomial_u128(f.n() as u64, k as u64);
    if windows > MAX_EXHAUSTIVE_WINDOWS {
        return Err(Error::Capacity(format!(
            "{what}: C({}, {k}) windows is beyond exhaustive reach",
            f.n()
        )));
    }
    Ok(())
}

/// `F_I = { e ∩ I : e ∈ F }`, distinct projections in colex order.
pub fn trace_onto(f: &Hypergraph, window: &VertexSet) -> Result<Vec<VertexSet>> {
    f.check_vertex_set(window)?;
    let mut proj: Vec<VertexSet> = f.edges().iter().map(|e| e.intersection(window)).collect();
    proj.sort_unstable();
    proj.dedup();
    Ok(proj)
}

/// `|F_I|` without materializing the projections.
pub fn trace_size(f: &Hypergraph, window: &VertexSet) -> Result<usize> {
    f.check_vertex_set(window)?;
    if let (Some(words), Some(w)) = (f.words(), window.as_word()) {
        return Ok(distinct_projections(&words, w) as usize);
    }
    let proj: HashSet<VertexSet> = f.edges().iter().map(|e| e.intersection(window)).collect();
    Ok(proj.len())
}

/// The shatter function `τ(F, k) = max_{|I| = k} |F_I|`, by exhaustive search.
pub fn trace_value(f: &Hypergraph, k: usize) -> Result<u64> {
    trace_value_witness(f, k).map(|(v, _)| v)
}

/// `τ(F, k)` together with the colex-first window attaining it.
pub fn trace_value_witness(f: &Hypergraph, k: usize) -> Result<(u64, VertexSet)> {
    check_exhaustive(f, k, "trace_value")?;
    if f.is_empty() {
        return Ok((0, VertexSet::from_vertices(0..k)));
    }
    let cap = if k >= 64 {
        f.len() as u64
    } else {
        (f.len() as u64).min(1u64 << k)
    };
    if let Some(words) = f.words() {
        let (v, w) = argmax_word_subsets(f.n(), k, cap, |window| {
            distinct_projections(&words, window)
        });
        return Ok((v, VertexSet::from_word(w)));
    }
    let n = f.n();
    let (v, idx) = argmax_index_subsets(n, k, cap, |window| {
        let mask = DenseMask::from_vertices(n, window.iter().copied());
        let proj: HashSet<VertexSet> = f
            .edges()
            .iter()
            .map(|e| e.intersection_with_dense(&mask))
            .collect();
        proj.len() as u64
    });
    Ok((v, VertexSet::from_vertices(idx)))
}

/// Relabels `e` through `map` (`usize::MAX` marks dropped vertices).
fn relabel(e: &VertexSet, map: &[usize]) -> VertexSet {
    VertexSet::from_vertices(e.iter().map(|v| map[v]).filter(|&v| v != usize::MAX))
}

/// `F[I]`: edges inside `I`, with `I` relabeled to `0..|I|` preserving order.
pub fn induced(f: &Hypergraph, window: &VertexSet) -> Result<Hypergraph> {
    f.check_vertex_set(window)?;
    let mut map = vec![usize::MAX; f.n()];
    for (new, old) in window.iter().enumerate() {
        map[old] = new;
    }
    let edges: Vec<VertexSet> = f
        .edges()
        .iter()
        .filter(|e| e.is_subset(window))
        .map(|e| relabel(e, &map))
        .collect();
    Hypergraph::new(window.len(), edges)
}

/// `wp(F, i)`: the most edges induced by any `i` vertices.
pub fn wp(f: &Hypergraph, i: usize) -> Result<u64> {
    wp_witness(f, i).map(|(v, _)| v)
}

pub fn wp_witness(f: &Hypergraph, i: usize) -> Result<(u64, VertexSet)> {
    check_exhaustive(f, i, "wp")?;
    let cap = f.len() as u64;
    if let Some(words) = f.words() {
        let (v, w) = argmax_word_subsets(f.n(), i, cap, |window| {
            words.iter().filter(|&&e| e & !window == 0).count() as u64
        });
        return Ok((v, VertexSet::from_word(w)));
    }
    let n = f.n();
    let (v, idx) = argmax_index_subsets(n, i, cap, |window| {
        let mask = DenseMask::from_vertices(n, window.iter().copied());
        f.edges()
            .iter()
            .filter(|e| e.is_subset_of_dense(&mask))
            .count() as u64
    });
    Ok((v, VertexSet::from_vertices(idx)))
}

/// `F^U`: the edges containing every vertex of `set`, on the same vertex range.
pub fn restricted(f: &Hypergraph, set: &VertexSet) -> Hypergraph {
    Hypergraph::from_sorted_unchecked(
        f.n(),
        f.edges()
            .iter()
            .filter(|e| set.is_subset(e))
            .cloned()
            .collect(),
    )
}

/// The link `F(U) = (V \ U, { e \ U : U ⊆ e ∈ F })`, relabeled onto `0..n-|U|`.
pub fn link(f: &Hypergraph, tuple: &VertexTuple) -> Result<Hypergraph> {
    if let Some(&v) = tuple.entries().iter().find(|&&v| v >= f.n()) {
        return Err(invalid(format!("vertex {v} out of range for n = {}", f.n())));
    }
    let set = tuple.distinct();
    let mut map = vec![usize::MAX; f.n()];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if !set.contains(v) {
            *slot = next;
            next += 1;
        }
    }
    let edges: Vec<VertexSet> = f
        .edges()
        .iter()
        .filter(|e| set.is_subset(e))
        .map(|e| relabel(e, &map))
        .collect();
    Hypergraph::new(next, edges)
}

fn word_subsets_of_size(e: u64, size: usize, mut f: impl FnMut(u64)) {
    let bits: Vec<u64> = (0..64).filter(|b| e >> b & 1 == 1).map(|b| 1u64 << b).collect();
    if size > bits.len() {
        return;
    }
    let mut combo: Vec<usize> = (0..size).collect();
    loop {
        f(combo.iter().map(|&p| bits[p]).fold(0, |a, b| a | b));
        if !next_colex(&mut combo, bits.len()) {
            break;
        }
    }
}

/// The `i`-shadow: every `i`-set contained in some edge, in colex order.
pub fn shadow(f: &Hypergraph, i: usize) -> Vec<VertexSet> {
    if let Some(words) = f.words() {
        let mut seen: HashSet<u64> = HashSet::new();
        for &e in words.iter().filter(|e| e.count_ones() as usize >= i) {
            word_subsets_of_size(e, i, |s| {
                seen.insert(s);
            });
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        return out.into_iter().map(VertexSet::from_word).collect();
    }
    let mut seen: HashSet<VertexSet> = HashSet::new();
    for e in f.edges().iter().filter(|e| e.len() >= i) {
        seen.extend(e.subsets_of_size(i));
    }
    let mut out: Vec<VertexSet> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// `|shadow(F, i)|`.
pub fn shadow_size(f: &Hypergraph, i: usize) -> usize {
    if let Some(words) = f.words() {
        let mut seen: HashSet<u64> = HashSet::new();
        for &e in words.iter().filter(|e| e.count_ones() as usize >= i) {
            word_subsets_of_size(e, i, |s| {
                seen.insert(s);
            });
        }
        return seen.len();
    }
    let mut seen: HashSet<VertexSet> = HashSet::new();
    for e in f.edges().iter().filter(|e| e.len() >= i) {
        seen.extend(e.subsets_of_size(i));
    }
    seen.len()
}

/// The smallest down-closed family containing `F`.
pub fn downward_closure(f: &Hypergraph) -> Result<Hypergraph> {
    let mut members: u128 = 0;
    for e in f.edges() {
        if e.len() > MAX_CLOSURE_EDGE {
            return Err(Error::Capacity(format!(
                "edge of size {} has 2^{} subsets; reduce the edge size",
                e.len(),
                e.len()
            )));
        }
        members += 1u128 << e.len();
    }
    if members > MAX_CLOSURE_MEMBERS {
        return Err(Error::Capacity(format!(
            "closure would enumerate {members} subsets"
        )));
    }
    if let Some(words) = f.words() {
        let mut seen: HashSet<u64> = HashSet::new();
        for &e in &words {
            let mut sub = e;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & e;
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        return Ok(Hypergraph::from_sorted_unchecked(
            f.n(),
            out.into_iter().map(VertexSet::from_word).collect(),
        ));
    }
    let mut seen: HashSet<VertexSet> = HashSet::new();
    for e in f.edges() {
        for size in 0..=e.len() {
            seen.extend(e.subsets_of_size(size));
        }
    }
    let mut out: Vec<VertexSet> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(Hypergraph::from_sorted_unchecked(f.n(), out))
}

/// The uniform layer `H_k` with the most edges (smallest `k` on ties).
pub fn popular_layer(h: &Hypergraph) -> Result<(usize, Hypergraph)> {
    if h.is_empty() {
        return Err(invalid("popular_layer of an empty family"));
    }
    let mut counts = vec![0usize; h.max_edge_size() + 1];
    for e in h.edges() {
        counts[e.len()] += 1;
    }
    let mut best = 0;
    for (k, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = k;
        }
    }
    Ok((best, h.layer(best)))
}

/// Largest `k` such that some `k`-set is shattered; `None` for the empty family.
pub fn vc_dimension(f: &Hypergraph) -> Result<Option<usize>> {
    if f.is_empty() {
        return Ok(None);
    }
    let mut dim = 0;
    for k in 1..=f.n() {
        if k >= 64 || (1u64 << k) > f.len() as u64 {
            break;
        }
        if trace_value(f, k)? == 1u64 << k {
            dim = k;
        } else {
            break;
        }
    }
    Ok(Some(dim))
}

/// A sampled window with large trace and one representative edge per projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingSubset {
    pub window: VertexSet,
    /// Indices into `F.edges()`; their projections onto `window` are pairwise distinct.
    pub representatives: Vec<usize>,
}

impl SeparatingSubset {
    pub fn trace(&self) -> usize {
        self.representatives.len()
    }
}

/// Samples `trials` random windows of `target_size` vertices, keeps the first
/// one with the largest trace, and picks for every projection the first edge
/// (in colex order) realizing it.
pub fn find_separating_subset(
    f: &Hypergraph,
    target_size: usize,
    trials: usize,
    seed: u64,
) -> Result<SeparatingSubset> {
    if trials == 0 {
        return Err(invalid("trials must be positive"));
    }
    if target_size > f.n() {
        return Err(invalid(format!(
            "target size {target_size} exceeds n = {}",
            f.n()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut best: Option<(usize, VertexSet)> = None;
    for _ in 0..trials {
        let window = VertexSet::from_vertices(sample_subset(f.n(), target_size, &mut rng));
        let size = trace_size(f, &window)?;
        if best.as_ref().is_none_or(|(b, _)| size > *b) {
            best = Some((size, window));
        }
    }
    let (_, window) = best.expect("trials > 0");
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let representatives = f
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| seen.insert(e.intersection(&window)))
        .map(|(idx, _)| idx)
        .collect();
    Ok(SeparatingSubset {
        window,
        representatives,
    })
}
