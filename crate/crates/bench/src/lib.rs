//! Shared fixtures for the benchmarks.

use rand::Rng;
use trace_lab_core::hypergraph::VertexSet;
use trace_lab_core::sampling::{rng_from_seed, sample_subset};
use trace_lab_core::Hypergraph;

/// `m` random `k`-sets on `n` vertices (duplicates dropped).
pub fn random_uniform(n: usize, k: usize, m: usize, seed: u64) -> Hypergraph {
    let mut rng = rng_from_seed(seed);
    let edges = (0..m).map(|_| VertexSet::from_vertices(sample_subset(n, k, &mut rng)));
    Hypergraph::new(n, edges).expect("vertices are in range")
}

/// `m` random subsets of `0..n`, each vertex kept with probability one half.
pub fn random_family(n: usize, m: usize, seed: u64) -> Hypergraph {
    let mut rng = rng_from_seed(seed);
    let edges = (0..m).map(|_| VertexSet::from_vertices((0..n).filter(|_| rng.random_bool(0.5))));
    Hypergraph::new(n, edges).expect("vertices are in range")
}
