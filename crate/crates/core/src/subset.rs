//! Index sets over a ground set `{1, ..., n}` and permutations acting on them.
//!
//! Sets are stored as bitmasks: element `i` occupies bit `i - 1`. The numeric
//! value of the mask is the "subset encoding" used by every ordering and
//! serialization convention in the crate.

use std::fmt;

/// Largest supported ground set size.
pub const MAX_GROUND: usize = 16;

/// A subset of `{1, ..., n}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The ground set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground size {n} exceeds {MAX_GROUND}");
        IndexSet(((1u64 << n) - 1) as u32)
    }

    /// `{i}` for a 1-based index.
    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&i), "index {i} out of range");
        IndexSet(1 << (i - 1))
    }

    /// Builds a set from 1-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(IndexSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        self.union(IndexSet::singleton(i))
    }

    pub fn without(self, i: usize) -> Self {
        self.difference(IndexSet::singleton(i))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_GROUND).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet::full(n).difference(self)
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Members in increasing order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_GROUND).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }

    /// Removes element `i` and shifts every larger element down by one.
    pub fn delete_and_relabel(self, i: usize) -> Self {
        let low = self.0 & ((1 << (i - 1)) - 1);
        let high = (self.0 >> i) << (i - 1);
        IndexSet(low | high)
    }

    /// Inverse of [`delete_and_relabel`](Self::delete_and_relabel) on sets
    /// not containing `i`: shifts elements `>= i` up by one.
    pub fn insert_gap(self, i: usize) -> Self {
        let low = self.0 & ((1 << (i - 1)) - 1);
        let high = (self.0 >> (i - 1)) << i;
        IndexSet(low | high)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All subsets of `{1..n}` ordered by size, then by numeric encoding.
pub fn display_order(n: usize) -> Vec<IndexSet> {
    let mut sets: Vec<IndexSet> = (0..(1u32 << n)).map(IndexSet).collect();
    sets.sort_by_key(|s| (s.len(), s.0));
    sets
}

/// All subsets of `{1..n}` in encoding order; position equals `bits()`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
    (0..(1u32 << n)).map(IndexSet)
}

/// A permutation of `{1..n}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images: `images[k]` is where `k + 1` is sent.
    /// Returns `None` unless the images form a bijection on `{1..n}`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return None;
            }
            seen[img - 1] = true;
            zero_based.push(img - 1);
        }
        Some(Permutation { images: zero_based })
    }

    /// The transposition of 1-based indices `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based index.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn apply_set(&self, s: IndexSet) -> IndexSet {
        let mut bits = 0u32;
        for i in s.iter() {
            bits |= 1 << self.images[i - 1];
        }
        IndexSet(bits)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation {
            images: first.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (k, &img) in self.images.iter().enumerate() {
            inv[img] = k;
        }
        Permutation { images: inv }
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1))
                .rev()
                .find(|&k| current[k] < current[k + 1])
            else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| current[k] < current[l]).unwrap();
            current.swap(k, l);
            current[k + 1..].reverse();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_order() {
        let s = IndexSet::from_indices([4, 1, 2]);
        assert_eq!(s.to_string(), "{1,2,4}");
        assert_eq!(IndexSet::EMPTY.to_string(), "{}");
        let order: Vec<String> = display_order(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            order,
            ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
    }

    #[test]
    fn delete_and_relabel_round_trip() {
        let s = IndexSet::from_indices([1, 3, 5]);
        assert_eq!(s.delete_and_relabel(3), IndexSet::from_indices([1, 4]));
        assert_eq!(s.delete_and_relabel(2), IndexSet::from_indices([1, 2, 4]));
        let t = IndexSet::from_indices([1, 2, 4]);
        assert_eq!(t.insert_gap(2).delete_and_relabel(2), t);
        assert_eq!(t.insert_gap(2), IndexSet::from_indices([1, 3, 5]));
    }

    #[test]
    fn permutations_enumerate_and_compose() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        let swap = Permutation::transposition(4, 2, 3);
        assert_eq!(swap.after(&swap), Permutation::identity(4));
        let cyc = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(
            cyc.apply_set(IndexSet::from_indices([1, 2])),
            IndexSet::from_indices([2, 3])
        );
        assert_eq!(cyc.inverse().after(&cyc), Permutation::identity(3));
        assert!(Permutation::from_images(&[1, 1, 2]).is_none());
    }
}
