//! Rank-at-most-2 nullity types, which depend only on the loops and the
//! parallel classes of the columns.

use std::fmt;

use num_rational::BigRational;

use super::{NullityError, NullityType, RationalMatrix};
use crate::subset::{all_subsets, display_order, IndexSet};

/// Nonzero columns split into parallel classes, plus the zero columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<IndexSet>,
    loops: IndexSet,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<IndexSet>, loops: IndexSet) -> Result<Self, NullityError> {
        let mut seen = loops;
        for b in &blocks {
            if b.is_empty() {
                return Err(NullityError::InvalidPartition("empty block".into()));
            }
            if !b.intersection(seen).is_empty() {
                return Err(NullityError::InvalidPartition(format!(
                    "{b} overlaps another part"
                )));
            }
            seen = seen.union(*b);
        }
        if seen != IndexSet::full(n) {
            return Err(NullityError::InvalidPartition(format!(
                "parts cover {seen}, not {}",
                IndexSet::full(n)
            )));
        }
        blocks.sort_by_key(|b| b.bits().trailing_zeros());
        Ok(Partition { n, blocks, loops })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn loops(&self) -> IndexSet {
        self.loops
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops.is_empty()
    }

    /// `min(2, number of blocks meeting T)`.
    pub fn rank_of(&self, t: IndexSet) -> u32 {
        let meeting = self
            .blocks
            .iter()
            .filter(|b| !b.intersection(t).is_empty())
            .count();
        meeting.min(2) as u32
    }

    /// A `2 × n` rational matrix with these loops and parallel classes: block
    /// `k` maps to the column `(1, k)`, loops to zero columns.
    pub fn realize(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(2, self.n);
        for (k, b) in self.blocks.iter().enumerate() {
            for c in b.iter() {
                m.set(0, c - 1, BigRational::from_integer(1.into()));
                m.set(1, c - 1, BigRational::from_integer(k.into()));
            }
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            f.write_str("-")?;
        }
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        if !self.loops.is_empty() {
            write!(f, " loops {}", self.loops)?;
        }
        Ok(())
    }
}

/// Nullity type of any rank-at-most-2 matrix with the given loops and
/// parallel classes, distinct classes spanning distinct lines.
pub fn partition_nullity(p: &Partition) -> NullityType {
    let entries = all_subsets(p.n)
        .map(|t| t.len() as u32 - p.rank_of(t))
        .collect();
    NullityType::new(p.n, entries).expect("rank <= 2 configurations are matroids")
}

/// All set partitions of `s`, each as a list of blocks ordered by least
/// element. Enumerated by restricted growth strings.
pub fn set_partitions(s: IndexSet) -> Vec<Vec<IndexSet>> {
    let elems: Vec<usize> = s.iter().collect();
    let mut out = Vec::new();
    let mut labels = vec![0usize; elems.len()];
    fn recurse(
        k: usize,
        max_label: usize,
        elems: &[usize],
        labels: &mut [usize],
        out: &mut Vec<Vec<IndexSet>>,
    ) {
        if k == elems.len() {
            let nblocks = if elems.is_empty() { 0 } else { max_label + 1 };
            let mut blocks = vec![IndexSet::EMPTY; nblocks];
            for (e, &l) in elems.iter().zip(labels.iter()) {
                blocks[l] = blocks[l].with(*e);
            }
            out.push(blocks);
            return;
        }
        let limit = if k == 0 { 0 } else { max_label + 1 };
        for l in 0..=limit {
            labels[k] = l;
            recurse(k + 1, max_label.max(l), elems, labels, out);
        }
    }
    recurse(0, 0, &elems, &mut labels, &mut out);
    out
}

/// Every choice of loop set together with every partition of the remaining
/// columns, loop sets taken in display order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for loops in display_order(n) {
        for blocks in set_partitions(loops.complement(n)) {
            out.push(Partition::new(n, blocks, loops).expect("valid by construction"));
        }
    }
    out
}
