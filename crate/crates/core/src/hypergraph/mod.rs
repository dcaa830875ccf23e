//! Immutable hypergraphs over dense vertex indices and the operations on them.

pub mod enumerate;
pub mod io;
mod ops;
mod vertex_set;

pub use ops::{
    downward_closure, find_separating_subset, induced, link, popular_layer, restricted, shadow,
    shadow_size, trace_onto, trace_size, trace_value, trace_value_witness, vc_dimension, wp,
    wp_witness, SeparatingSubset,
};
pub use vertex_set::{DenseMask, VertexSet, VertexTuple};

use crate::error::{invalid, Result};

/// A set system on vertices `0..n`.
///
/// Edges are distinct and kept sorted in colex order, so two hypergraphs with
/// the same edge set compare equal and serialize identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
    uniformity: Option<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting vertices `>= n` and deduplicating edges.
    pub fn new<I: IntoIterator<Item = VertexSet>>(n: usize, edges: I) -> Result<Self> {
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if let Some(v) = e.max_vertex() {
                if v >= n {
                    return Err(invalid(format!("edge {e} has vertex {v} >= n = {n}")));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_unchecked(n, edges))
    }

    /// Caller guarantees edges are in range, sorted and distinct.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let uniformity = match edges.first() {
            Some(first) if edges.iter().all(|e| e.len() == first.len()) => Some(first.len()),
            _ => None,
        };
        Self {
            n,
            edges,
            uniformity,
        }
    }

    pub fn from_edge_lists<E: AsRef<[usize]>>(n: usize, edges: &[E]) -> Result<Self> {
        Self::new(
            n,
            edges
                .iter()
                .map(|e| VertexSet::from_vertices(e.as_ref().iter().copied())),
        )
    }

    /// Hypergraph whose edges are the set bits of each word (`n <= 64`).
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self> {
        if n > 64 {
            return Err(invalid("from_words needs n <= 64"));
        }
        Self::new(n, words.iter().map(|&w| VertexSet::from_word(w)))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    /// The complete `k`-graph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Self {
        let all = VertexSet::from_vertices(0..n);
        Self::from_sorted_unchecked(n, all.subsets_of_size(k).collect())
    }

    /// All subsets of `base`, as a family on `n` vertices.
    pub fn power_set(n: usize, base: &VertexSet) -> Result<Self> {
        if base.len() > 30 {
            return Err(crate::Error::Capacity(format!(
                "power set of a {}-set",
                base.len()
            )));
        }
        Self::new(
            n,
            (0..=base.len()).flat_map(|s| base.subsets_of_size(s).collect::<Vec<_>>()),
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in colex order.
    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    /// `m = |F|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `Some(k)` when every edge has exactly `k` vertices (and there is at least one edge).
    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn contains_edge(&self, e: &VertexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Degree of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Number of edges containing every vertex of `set` (the size of its link).
    pub fn codegree(&self, set: &VertexSet) -> usize {
        self.edges.iter().filter(|e| set.is_subset(e)).count()
    }

    /// The edges of size exactly `size`.
    pub fn layer(&self, size: usize) -> Hypergraph {
        Self::from_sorted_unchecked(
            self.n,
            self.edges
                .iter()
                .filter(|e| e.len() == size)
                .cloned()
                .collect(),
        )
    }

    /// Edges as sorted vertex lists (the interchange shape shared with the oracle).
    pub fn edge_vectors(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(VertexSet::to_vec).collect()
    }

    /// The edge masks as words when `n <= 64`.
    pub(crate) fn words(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        self.edges.iter().map(VertexSet::as_word).collect()
    }

    /// Whether every subset of every edge is itself an edge.
    pub fn is_down_closed(&self) -> bool {
        self.edges.iter().all(|e| {
            e.iter().all(|v| {
                let mut sub = e.clone();
                sub.remove(v);
                self.contains_edge(&sub)
            })
        })
    }

    pub(crate) fn check_vertex_set(&self, set: &VertexSet) -> Result<()> {
        match set.max_vertex() {
            Some(v) if v >= self.n => Err(invalid(format!(
                "vertex {v} out of range for n = {}",
                self.n
            ))),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_dedups_and_sorts_colex() {
        let h = Hypergraph::from_edge_lists(4, &[vec![2, 3], vec![0, 1], vec![3, 2], vec![0, 2]])
            .unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h.edge_vectors(), vec![vec![0, 1], vec![0, 2], vec![2, 3]]);
        assert_eq!(h.uniformity(), Some(2));
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        assert!(Hypergraph::from_edge_lists(3, &[vec![0, 3]]).is_err());
    }

    #[test]
    fn complete_and_power_set() {
        assert_eq!(Hypergraph::complete(5, 3).len(), 10);
        assert_eq!(Hypergraph::complete(5, 0).len(), 1);
        let p = Hypergraph::power_set(6, &VertexSet::from_vertices([1, 3, 5])).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.is_down_closed());
        assert_eq!(p.uniformity(), None);
    }

    #[test]
    fn degrees_and_codegree() {
        let h = Hypergraph::complete(4, 2);
        assert_eq!(h.degrees(), vec![3; 4]);
        assert_eq!(h.codegree(&VertexSet::from_vertices([0, 1])), 1);
        assert_eq!(h.codegree(&VertexSet::new()), 6);
    }
}
