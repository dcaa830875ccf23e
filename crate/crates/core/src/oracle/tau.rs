//! Exact `τ(n, m, k) = min_{|F| = m} max_{|I| = k} |F_I|` at micro scale.
//!
//! Families are `m`-subsets of the `2^n` vertex subsets, searched depth first in
//! increasing mask order with per-window projection counts kept incrementally.
//! Adding a member never shrinks a trace, so a branch dies as soon as its
//! current maximum reaches the best complete family found so far.
//!
//! XOR by a fixed set maps projections bijectively on every window, so the
//! search only visits families containing the empty set.

use std::time::Instant;

use super::OracleBudget;
use crate::error::{invalid, Error, Result};

/// Largest `n` accepted: the ground set has `2^n <= 64` members.
pub const MAX_TAU_N: usize = 6;

struct Search {
    universe: u64,
    m: usize,
    windows: Vec<u64>,
    /// `counts[w << n | p]`: members projecting to `p` on window `w`.
    counts: Vec<u16>,
    distinct: Vec<u32>,
    n: usize,
    best: u32,
    floor: u32,
    nodes: u64,
    max_nodes: u64,
    started: Instant,
    budget: OracleBudget,
    aborted: Option<String>,
}

impl Search {
    fn add(&mut self, e: u64) {
        for (w, &win) in self.windows.iter().enumerate() {
            let slot = (w << self.n) | (e & win) as usize;
            if self.counts[slot] == 0 {
                self.distinct[w] += 1;
            }
            self.counts[slot] += 1;
        }
    }

    fn remove(&mut self, e: u64) {
        for (w, &win) in self.windows.iter().enumerate() {
            let slot = (w << self.n) | (e & win) as usize;
            self.counts[slot] -= 1;
            if self.counts[slot] == 0 {
                self.distinct[w] -= 1;
            }
        }
    }

    fn current(&self) -> u32 {
        self.distinct.iter().copied().max().unwrap_or(0)
    }

    fn dfs(&mut self, next: u64, chosen: usize) {
        if self.aborted.is_some() || self.best <= self.floor {
            return;
        }
        if chosen == self.m {
            self.best = self.best.min(self.current());
            return;
        }
        let remaining = (self.m - chosen) as u64;
        let mut e = next;
        while e + remaining <= self.universe {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.aborted = Some(format!("more than {} search nodes", self.max_nodes));
                return;
            }
            if self.nodes & 4095 == 0 && self.started.elapsed() > self.budget.time_limit {
                self.aborted = Some(format!("time limit {:?}", self.budget.time_limit));
                return;
            }
            self.add(e);
            if self.current() < self.best {
                self.dfs(e + 1, chosen + 1);
            }
            self.remove(e);
            if self.aborted.is_some() || self.best <= self.floor {
                return;
            }
            e += 1;
        }
    }
}

/// Exact `τ(n, m, k)`.
///
/// Fails with [`Error::BudgetExceeded`] carrying the best upper bound found
/// when the search visits more than `budget.max_families` nodes or runs past
/// `budget.time_limit`.
pub fn tau_exact(n: usize, m: usize, k: usize, budget: &OracleBudget) -> Result<u64> {
    if n > MAX_TAU_N {
        return Err(Error::Capacity(format!("tau_exact needs n <= {MAX_TAU_N}, got {n}")));
    }
    if n > budget.max_n || m > budget.max_m {
        return Err(Error::BudgetExceeded {
            detail: format!("n = {n}, m = {m} outside the budget"),
            best_so_far: None,
        });
    }
    if k > n {
        return Err(invalid(format!("need k <= n, got k = {k}, n = {n}")));
    }
    let universe = 1u64 << n;
    if m as u64 > universe {
        return Err(invalid(format!("need m <= 2^n = {universe}, got {m}")));
    }
    if m == 0 {
        return Ok(0);
    }
    let windows: Vec<u64> = (0..universe)
        .filter(|w| w.count_ones() as usize == k)
        .collect();
    let cap = (m as u64).min(1 << k) as u32;
    // each projection has at most 2^{n-k} preimages
    let floor = (m as u64).div_ceil(1 << (n - k)) as u32;
    let mut search = Search {
        universe,
        m,
        counts: vec![0; windows.len() << n],
        distinct: vec![0; windows.len()],
        windows,
        n,
        best: cap + 1,
        floor,
        nodes: 0,
        max_nodes: budget.max_families,
        started: Instant::now(),
        budget: *budget,
        aborted: None,
    };
    search.add(0);
    search.dfs(1, 1);
    match search.aborted {
        Some(detail) if search.best > search.floor => Err(Error::BudgetExceeded {
            detail,
            best_so_far: (search.best <= cap).then_some(search.best as u64),
        }),
        _ => Ok(search.best as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let b = OracleBudget::default();
        assert_eq!(tau_exact(4, 4, 3, &b).unwrap(), 4);
        assert_eq!(tau_exact(4, 10, 3, &b).unwrap(), 7);
        assert_eq!(tau_exact(3, 8, 2, &b).unwrap(), 4);
        assert_eq!(tau_exact(3, 1, 2, &b).unwrap(), 1);
        assert_eq!(tau_exact(3, 0, 2, &b).unwrap(), 0);
    }

    #[test]
    fn node_budget() {
        let b = OracleBudget {
            max_families: 3,
            ..OracleBudget::default()
        };
        match tau_exact(4, 10, 3, &b) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
