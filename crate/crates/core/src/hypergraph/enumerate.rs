//! Colex enumeration of fixed-size vertex subsets and deterministic parallel argmax.
//!
//! The search space `C([n], k)` is split into partitions by the largest
//! element of the subset. Partitions are independent, and scanning them in
//! increasing order of their top element visits subsets in global colex
//! order, so the reduction below returns the colex-first maximizer no matter
//! how rayon schedules the partitions.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

/// Advances a strictly increasing `combo` with entries `< n` to the next
/// subset of the same size in colex order. Returns `false` after the last one.
pub fn next_colex(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for j in 0..k {
        let limit = if j + 1 < k { combo[j + 1] } else { n };
        if combo[j] + 1 < limit {
            combo[j] += 1;
            for (t, c) in combo[..j].iter_mut().enumerate() {
                *c = t;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every `k`-subset of `0..bits` encoded as a mask, in increasing
/// (= colex) order. Stops early when `f` returns `false`.
pub fn for_each_word_subset(bits: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    debug_assert!(bits <= 64);
    if k > bits {
        return;
    }
    let limit: u128 = 1u128 << bits;
    let mut x: u128 = (1u128 << k) - 1;
    while x < limit {
        if !f(x as u64) {
            return;
        }
        if x == 0 {
            return;
        }
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// Binomial coefficient in `u128`, saturating.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Colex-first argmax of `eval` over all `k`-subsets of `0..n` (`n <= 64`),
/// with subsets passed as masks. Scanning stops once `cap` is reached.
pub(crate) fn argmax_word_subsets<F>(n: usize, k: usize, cap: u64, eval: F) -> (u64, u64)
where
    F: Fn(u64) -> u64 + Sync,
{
    debug_assert!(n <= 64 && k <= n);
    if k == 0 {
        return (eval(0), 0);
    }
    let capped_top = AtomicUsize::new(usize::MAX);
    let partials: Vec<Option<(u64, u64)>> = (k - 1..n)
        .into_par_iter()
        .map(|top| {
            if top > capped_top.load(Ordering::Relaxed) {
                return None;
            }
            let high = 1u64 << top;
            let mut best: Option<(u64, u64)> = None;
            for_each_word_subset(top, k - 1, |low| {
                let mask = low | high;
                let value = eval(mask);
                if best.is_none_or(|(b, _)| value > b) {
                    best = Some((value, mask));
                }
                if value >= cap {
                    capped_top.fetch_min(top, Ordering::Relaxed);
                    return false;
                }
                true
            });
            best
        })
        .collect();
    reduce_in_order(partials).unwrap_or((0, 0))
}

/// Same as [`argmax_word_subsets`] for arbitrary `n`, passing subsets as sorted index slices.
pub(crate) fn argmax_index_subsets<F>(n: usize, k: usize, cap: u64, eval: F) -> (u64, Vec<usize>)
where
    F: Fn(&[usize]) -> u64 + Sync,
{
    debug_assert!(k <= n);
    if k == 0 {
        return (eval(&[]), Vec::new());
    }
    let capped_top = AtomicUsize::new(usize::MAX);
    let partials: Vec<Option<(u64, Vec<usize>)>> = (k - 1..n)
        .into_par_iter()
        .map(|top| {
            if top > capped_top.load(Ordering::Relaxed) {
                return None;
            }
            let mut combo: Vec<usize> = (0..k).collect();
            combo[k - 1] = top;
            let mut best: Option<(u64, Vec<usize>)> = None;
            loop {
                let value = eval(&combo);
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, combo.clone()));
                }
                if value >= cap {
                    capped_top.fetch_min(top, Ordering::Relaxed);
                    break;
                }
                if !next_colex(&mut combo[..k - 1], top) {
                    break;
                }
            }
            best
        })
        .collect();
    reduce_in_order(partials).unwrap_or((0, Vec::new()))
}

fn reduce_in_order<W>(partials: Vec<Option<(u64, W)>>) -> Option<(u64, W)> {
    let mut best: Option<(u64, W)> = None;
    for p in partials.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| p.0 > *b) {
            best = Some(p);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_combinations_are_complete_and_ordered() {
        let mut combo = vec![0, 1, 2];
        let mut seen = vec![combo.clone()];
        while next_colex(&mut combo, 6) {
            seen.push(combo.clone());
        }
        assert_eq!(seen.len(), 20);
        let masks: Vec<u64> = seen
            .iter()
            .map(|c| c.iter().map(|&v| 1u64 << v).sum())
            .collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn word_subsets_match_binomial() {
        for n in 0..=10 {
            for k in 0..=n {
                let mut count = 0u128;
                let mut last = None;
                for_each_word_subset(n, k, |m| {
                    assert_eq!(m.count_ones() as usize, k);
                    assert!(last.is_none_or(|l| l < m));
                    last = Some(m);
                    count += 1;
                    true
                });
                assert_eq!(count, binomial_u128(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn full_width_word_subsets_terminate() {
        let mut count = 0;
        for_each_word_subset(64, 1, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 64);
        let mut all = 0;
        for_each_word_subset(64, 64, |m| {
            assert_eq!(m, u64::MAX);
            all += 1;
            true
        });
        assert_eq!(all, 1);
    }

    #[test]
    fn argmax_returns_colex_first_maximizer() {
        // value = number of even vertices; maximizers on n=6, k=2 are {0,2},{0,4},{2,4}
        let eval = |m: u64| (m & 0b010101).count_ones() as u64;
        let (v, w) = argmax_word_subsets(6, 2, u64::MAX, eval);
        assert_eq!((v, w), (2, 0b101));
        let (v, idx) = argmax_index_subsets(6, 2, u64::MAX, |s| {
            s.iter().filter(|&&x| x % 2 == 0).count() as u64
        });
        assert_eq!((v, idx), (2, vec![0, 2]));
    }
}
