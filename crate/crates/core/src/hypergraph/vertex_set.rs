use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// One 64-bit window of a vertex mask; `index` selects vertices `64*index..64*index+64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Limb {
    index: u32,
    bits: u64,
}

/// A finite set of vertex indices stored as a sparse chain of 64-bit mask limbs.
///
/// Only non-zero limbs are kept, sorted by limb index, so sets over a small
/// prefix of the vertex range fit inline in a single word while sparse sets
/// over thousands of vertices stay small. Equality and hashing are structural.
///
/// The total order is **colex**: `A < B` iff the largest element of the
/// symmetric difference lies in `B`. For sets inside `0..64` this coincides
/// with comparing the masks as integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    limbs: SmallVec<[Limb; 1]>,
    size: u32,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set whose members are the set bits of `word`.
    pub fn from_word(word: u64) -> Self {
        let mut s = Self::new();
        if word != 0 {
            s.limbs.push(Limb { index: 0, bits: word });
            s.size = word.count_ones();
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// Builds a set from arbitrary (possibly repeated, unsorted) vertices.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut s = Self::new();
        for v in vertices {
            s.insert(v);
        }
        s
    }

    fn from_limbs<I: IntoIterator<Item = Limb>>(limbs: I) -> Self {
        let mut out = Self::new();
        for l in limbs {
            if l.bits != 0 {
                out.size += l.bits.count_ones();
                out.limbs.push(l);
            }
        }
        out
    }

    /// Number of vertices (cached popcount).
    #[inline]
    pub fn len(&self) -> usize {
        self.size as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    fn split(v: usize) -> (u32, u64) {
        ((v / 64) as u32, 1u64 << (v % 64))
    }

    pub fn contains(&self, v: usize) -> bool {
        let (index, bit) = Self::split(v);
        match self.limbs.binary_search_by_key(&index, |l| l.index) {
            Ok(pos) => self.limbs[pos].bits & bit != 0,
            Err(_) => false,
        }
    }

    /// Adds `v`; returns whether it was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        let (index, bit) = Self::split(v);
        match self.limbs.binary_search_by_key(&index, |l| l.index) {
            Ok(pos) => {
                let limb = &mut self.limbs[pos];
                if limb.bits & bit != 0 {
                    return false;
                }
                limb.bits |= bit;
            }
            Err(pos) => self.limbs.insert(pos, Limb { index, bits: bit }),
        }
        self.size += 1;
        true
    }

    /// Removes `v`; returns whether it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        let (index, bit) = Self::split(v);
        if let Ok(pos) = self.limbs.binary_search_by_key(&index, |l| l.index) {
            let limb = &mut self.limbs[pos];
            if limb.bits & bit != 0 {
                limb.bits &= !bit;
                if limb.bits == 0 {
                    self.limbs.remove(pos);
                }
                self.size -= 1;
                return true;
            }
        }
        false
    }

    /// Vertices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().flat_map(|l| {
            let base = l.index as usize * 64;
            BitIter(l.bits).map(move |b| base + b)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.limbs
            .last()
            .map(|l| l.index as usize * 64 + 63 - l.bits.leading_zeros() as usize)
    }

    /// The mask as a single word, when every vertex is below 64.
    pub fn as_word(&self) -> Option<u64> {
        match self.limbs.as_slice() {
            [] => Some(0),
            [Limb { index: 0, bits }] => Some(*bits),
            _ => None,
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        if self.size > other.size {
            return false;
        }
        let mut j = 0;
        for l in &self.limbs {
            while j < other.limbs.len() && other.limbs[j].index < l.index {
                j += 1;
            }
            match other.limbs.get(j) {
                Some(o) if o.index == l.index => {
                    if l.bits & !o.bits != 0 {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.limbs.len() && j < other.limbs.len() {
            let (a, b) = (self.limbs[i], other.limbs[j]);
            match a.index.cmp(&b.index) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(Limb {
                        index: a.index,
                        bits: a.bits & b.bits,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_limbs(out)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        let (mut i, mut j) = (0, 0);
        let mut count = 0;
        while i < self.limbs.len() && j < other.limbs.len() {
            let (a, b) = (self.limbs[i], other.limbs[j]);
            match a.index.cmp(&b.index) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    count += (a.bits & b.bits).count_ones() as usize;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.limbs.len() + other.limbs.len());
        while i < self.limbs.len() || j < other.limbs.len() {
            match (self.limbs.get(i), other.limbs.get(j)) {
                (Some(a), Some(b)) if a.index == b.index => {
                    out.push(Limb {
                        index: a.index,
                        bits: a.bits | b.bits,
                    });
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.index < b.index => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self::from_limbs(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut j = 0;
        let limbs = self.limbs.iter().map(|a| {
            while j < other.limbs.len() && other.limbs[j].index < a.index {
                j += 1;
            }
            match other.limbs.get(j) {
                Some(b) if b.index == a.index => Limb {
                    index: a.index,
                    bits: a.bits & !b.bits,
                },
                _ => *a,
            }
        });
        Self::from_limbs(limbs.collect::<Vec<_>>())
    }

    /// Every `size`-subset of this set, in colex order.
    pub fn subsets_of_size(&self, size: usize) -> impl Iterator<Item = VertexSet> + '_ {
        let members = self.to_vec();
        let mut combo: Option<Vec<usize>> = if size <= members.len() {
            Some((0..size).collect())
        } else {
            None
        };
        std::iter::from_fn(move || {
            let current = combo.as_mut()?;
            let out = VertexSet::from_vertices(current.iter().map(|&p| members[p]));
            if !crate::hypergraph::enumerate::next_colex(current, members.len()) {
                combo = None;
            }
            Some(out)
        })
    }

    pub fn is_subset_of_dense(&self, mask: &DenseMask) -> bool {
        self.limbs.iter().all(|l| {
            let word = mask.words.get(l.index as usize).copied().unwrap_or(0);
            l.bits & !word == 0
        })
    }

    pub fn intersection_with_dense(&self, mask: &DenseMask) -> VertexSet {
        Self::from_limbs(
            self.limbs
                .iter()
                .map(|l| Limb {
                    index: l.index,
                    bits: l.bits & mask.words.get(l.index as usize).copied().unwrap_or(0),
                })
                .collect::<Vec<_>>(),
        )
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.limbs.iter().rev();
        let mut b = other.limbs.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => {
                    if x.index != y.index {
                        return x.index.cmp(&y.index);
                    }
                    if x.bits != y.bits {
                        return x.bits.cmp(&y.bits);
                    }
                }
            }
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_vertices(iter)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// A dense bit mask over `0..n`, used for membership tests against sampled windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMask {
    words: Vec<u64>,
}

impl DenseMask {
    pub fn new(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut m = Self::new(n);
        for v in vertices {
            m.insert(v);
        }
        m
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn to_vertex_set(&self) -> VertexSet {
        VertexSet::from_limbs(
            self.words
                .iter()
                .enumerate()
                .map(|(i, &bits)| Limb {
                    index: i as u32,
                    bits,
                })
                .collect::<Vec<_>>(),
        )
    }
}

/// An ordered tuple of vertices; repetitions allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexTuple {
    entries: Vec<usize>,
}

impl VertexTuple {
    pub fn new(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Length of the tuple, counting repetitions.
    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    /// `|U|`: the number of distinct vertices.
    pub fn distinct_count(&self) -> usize {
        self.distinct().len()
    }

    pub fn distinct(&self) -> VertexSet {
        VertexSet::from_vertices(self.entries.iter().copied())
    }

    pub fn extended(&self, v: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.push(v);
        Self { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_and_size() {
        let mut s = VertexSet::new();
        assert!(s.insert(3));
        assert!(s.insert(200));
        assert!(!s.insert(3));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![3, 200]);
        assert_eq!(s.max_vertex(), Some(200));
        assert!(s.remove(200));
        assert!(!s.remove(200));
        assert_eq!(s, VertexSet::from_word(0b1000));
        assert!(s.remove(3));
        assert_eq!(s, VertexSet::new());
    }

    #[test]
    fn colex_order_matches_word_order_below_64() {
        let mut sets: Vec<VertexSet> = (0u64..64).map(VertexSet::from_word).collect();
        sets.reverse();
        sets.sort();
        for (i, s) in sets.iter().enumerate() {
            assert_eq!(s.as_word(), Some(i as u64));
        }
    }

    #[test]
    fn colex_order_across_limbs() {
        let a = VertexSet::from_vertices([0, 1, 2, 63]);
        let b = VertexSet::from_vertices([64]);
        let c = VertexSet::from_vertices([0, 64]);
        let d = VertexSet::from_vertices([130]);
        assert!(a < b && b < c && c < d);
    }

    #[test]
    fn set_algebra_across_limbs() {
        let a = VertexSet::from_vertices([1, 70, 140, 300]);
        let b = VertexSet::from_vertices([1, 71, 140, 500]);
        assert_eq!(a.intersection(&b).to_vec(), vec![1, 140]);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.union(&b).to_vec(), vec![1, 70, 71, 140, 300, 500]);
        assert_eq!(a.difference(&b).to_vec(), vec![70, 300]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        let mask = DenseMask::from_vertices(600, [1, 70, 140, 300, 7]);
        assert!(a.is_subset_of_dense(&mask));
        assert!(!b.is_subset_of_dense(&mask));
        assert_eq!(b.intersection_with_dense(&mask).to_vec(), vec![1, 140]);
    }

    #[test]
    fn subsets_of_size_enumerates_colex() {
        let s = VertexSet::from_vertices([2, 5, 9]);
        let subs: Vec<_> = s.subsets_of_size(2).map(|x| x.to_vec()).collect();
        assert_eq!(subs, vec![vec![2, 5], vec![2, 9], vec![5, 9]]);
        assert_eq!(s.subsets_of_size(0).count(), 1);
        assert_eq!(s.subsets_of_size(4).count(), 0);
    }

    #[test]
    fn tuple_distinct_count() {
        let u = VertexTuple::new(vec![3, 1, 3]);
        assert_eq!(u.arity(), 3);
        assert_eq!(u.distinct_count(), 2);
        assert_eq!(u.extended(9).entries(), &[3, 1, 3, 9]);
    }
}
