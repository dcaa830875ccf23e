//! Slow reference implementations over plain vertex lists.
//!
//! Nothing here touches the bit-level machinery of [`crate::hypergraph`]; the
//! family is read once through [`Hypergraph::edge_vectors`].

use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest vertex count the naive routines accept.
pub const MAX_NAIVE_N: usize = 20;

fn check(f: &Hypergraph) -> Result<Vec<Vec<usize>>> {
    if f.n() > MAX_NAIVE_N {
        return Err(Error::Capacity(format!(
            "naive oracle needs n <= {MAX_NAIVE_N}, got {}",
            f.n()
        )));
    }
    Ok(f.edge_vectors())
}

/// Calls `visit` on every `size`-subset of `items`, in lexicographic order.
pub fn for_each_combination(items: &[usize], size: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(
        items: &[usize],
        size: usize,
        from: usize,
        current: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if current.len() == size {
            visit(current);
            return;
        }
        let need = size - current.len();
        for idx in from..items.len() {
            if items.len() - idx < need {
                break;
            }
            current.push(items[idx]);
            go(items, size, idx + 1, current, visit);
            current.pop();
        }
    }
    if size <= items.len() {
        go(items, size, 0, &mut Vec::with_capacity(size), visit);
    }
}

fn project(edges: &[Vec<usize>], window: &[usize]) -> usize {
    let projections: BTreeSet<Vec<usize>> = edges
        .iter()
        .map(|e| e.iter().copied().filter(|v| window.contains(v)).collect())
        .collect();
    projections.len()
}

/// `|F_I|`.
pub fn trace_exact(f: &Hypergraph, window: &[usize]) -> Result<usize> {
    let edges = check(f)?;
    if window.iter().any(|&v| v >= f.n()) {
        return Err(invalid("window vertex out of range"));
    }
    Ok(project(&edges, window))
}

/// `max_{|I| = k} |F_I|`.
pub fn trace_value_exact(f: &Hypergraph, k: usize) -> Result<usize> {
    let edges = check(f)?;
    if k > f.n() {
        return Err(invalid("k exceeds n"));
    }
    let vertices: Vec<usize> = (0..f.n()).collect();
    let mut best = 0;
    for_each_combination(&vertices, k, &mut |w| best = best.max(project(&edges, w)));
    Ok(best)
}

/// Number of `i`-sets inside some edge.
pub fn shadow_exact(f: &Hypergraph, i: usize) -> Result<usize> {
    let edges = check(f)?;
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for e in &edges {
        for_each_combination(e, i, &mut |s| {
            found.insert(s.to_vec());
        });
    }
    Ok(found.len())
}

/// `max_{|I| = i} |F[I]|`.
pub fn wp_exact(f: &Hypergraph, i: usize) -> Result<usize> {
    let edges = check(f)?;
    if i > f.n() {
        return Err(invalid("i exceeds n"));
    }
    let vertices: Vec<usize> = (0..f.n()).collect();
    let mut best = 0;
    for_each_combination(&vertices, i, &mut |w| {
        let inside = edges
            .iter()
            .filter(|e| e.iter().all(|v| w.contains(v)))
            .count();
        best = best.max(inside);
    });
    Ok(best)
}

/// Number of edges containing every vertex of `set`.
pub fn codegree_exact(f: &Hypergraph, set: &[usize]) -> Result<usize> {
    let edges = check(f)?;
    Ok(edges
        .iter()
        .filter(|e| set.iter().all(|v| e.contains(v)))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let tri = Hypergraph::from_edge_lists(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert_eq!(trace_exact(&tri, &[0]).unwrap(), 2);
        let k3 = Hypergraph::complete(5, 3);
        assert_eq!(shadow_exact(&k3, 2).unwrap(), 10);
        let matching = Hypergraph::from_edge_lists(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(wp_exact(&matching, 2).unwrap(), 1);
        assert_eq!(trace_value_exact(&Hypergraph::empty(4), 2).unwrap(), 0);
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(&[0, 1, 2, 3], 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            shadow_exact(&Hypergraph::empty(21), 1),
            Err(Error::Capacity(_))
        ));
    }
}
