//! Nullity types and rank types of column sets, computed exactly.
//!
//! For a matrix `M` with `n` columns, `nul(M)` records for every subset `T`
//! of columns the dimension of the kernel of `M[:, T]`, and `ρ(M)` the rank.
//! Both are indexed by subset encoding.

mod catalog;
mod d5;
mod matrix;
mod partition;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::rational_rank;
use crate::ratio::homogeneity_vectors;
use crate::subset::{all_subsets, display_order, IndexSet};

pub use catalog::{catalog_n3, catalog_n4, CatalogEntry};
pub use d5::{d5_constraint_set, D5Row, D5RowKind};
pub use matrix::{parse_matrix, MatrixParseError, RationalMatrix};
pub use partition::{all_partitions, partition_nullity, set_partitions, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NullityError {
    #[error("not a matroid nullity/rank function: {0}")]
    NotMatroid(String),
    #[error("superset matrix needs |S| >= 3, got {0}")]
    SetTooSmall(usize),
    #[error("subset matrix needs |S| <= n - 2 = {limit}, got {size}")]
    SetTooLarge { size: usize, limit: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("catalog produced {found} distinct nullity types, expected {expected}")]
    CatalogCount { found: usize, expected: usize },
}

/// Checks that `rank` is a matroid rank function on `{1..n}`.
fn check_rank_function(n: usize, rank: impl Fn(IndexSet) -> i64) -> Result<(), NullityError> {
    if rank(IndexSet::EMPTY) != 0 {
        return Err(NullityError::NotMatroid(
            "nonzero value on the empty set".into(),
        ));
    }
    for t in all_subsets(n) {
        let rt = rank(t);
        for i in (1..=n).filter(|&i| !t.contains(i)) {
            let step = rank(t.with(i)) - rt;
            if !(0..=1).contains(&step) {
                return Err(NullityError::NotMatroid(format!(
                    "adding {i} to {t} changes the rank by {step}"
                )));
            }
            for j in (i + 1..=n).filter(|&j| !t.contains(j)) {
                if rank(t.with(i)) + rank(t.with(j)) < rank(t.with(i).with(j)) + rt {
                    return Err(NullityError::NotMatroid(format!(
                        "submodularity fails at {t} with {i}, {j}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Rank of every column subset; always a matroid rank function.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankType {
    n: usize,
    entries: Vec<u32>,
}

/// Kernel dimension of every column subset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NullityType {
    n: usize,
    entries: Vec<u32>,
}

impl RankType {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self, NullityError> {
        assert_eq!(entries.len(), 1 << n, "expected 2^{n} entries");
        check_rank_function(n, |t| entries[t.bits() as usize] as i64)?;
        Ok(RankType { n, entries })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, t: IndexSet) -> u32 {
        self.entries[t.bits() as usize]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_nullity(&self) -> NullityType {
        NullityType {
            n: self.n,
            entries: all_subsets(self.n)
                .map(|t| t.len() as u32 - self.entry(t))
                .collect(),
        }
    }
}

impl NullityType {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self, NullityError> {
        assert_eq!(entries.len(), 1 << n, "expected 2^{n} entries");
        check_rank_function(n, |t| t.len() as i64 - entries[t.bits() as usize] as i64)?;
        Ok(NullityType { n, entries })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, t: IndexSet) -> u32 {
        self.entries[t.bits() as usize]
    }

    /// Entries indexed by subset encoding.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_rank(&self) -> RankType {
        RankType {
            n: self.n,
            entries: all_subsets(self.n)
                .map(|t| t.len() as u32 - self.entry(t))
                .collect(),
        }
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        counts_to_rationals(&self.entries)
    }

    /// The vector with entry `S` equal to this type's entry at `S^c`. Not a
    /// nullity type in general.
    pub fn complement_reindexed(&self) -> Vec<u32> {
        let full = (1usize << self.n) - 1;
        (0..self.entries.len())
            .map(|k| self.entries[full ^ k])
            .collect()
    }

    /// Nullity type of the matrix obtained by permuting columns.
    pub fn permuted(&self, sigma: &crate::subset::Permutation) -> NullityType {
        let mut entries = vec![0; self.entries.len()];
        for t in all_subsets(self.n) {
            entries[sigma.apply_set(t).bits() as usize] = self.entry(t);
        }
        NullityType { n: self.n, entries }
    }
}

impl fmt::Display for NullityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in display_order(self.n).into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", t, self.entry(t))?;
        }
        Ok(())
    }
}

pub(crate) fn counts_to_rationals(counts: &[u32]) -> Vec<BigRational> {
    counts
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

/// The cardinality vector `[|T|]`.
pub fn cardinality_vector(n: usize) -> Vec<u32> {
    all_subsets(n).map(|t| t.len() as u32).collect()
}

/// Rank of every column subset of `m`, in exact arithmetic.
pub fn rank_type(m: &RationalMatrix) -> RankType {
    let n = m.cols();
    RankType {
        n,
        entries: all_subsets(n).map(|t| m.column_rank(t) as u32).collect(),
    }
}

/// `|T| − rank(T)` for every column subset `T` of `m`.
pub fn nullity_type(m: &RationalMatrix) -> NullityType {
    rank_type(m).to_nullity()
}

/// The `(n−1) × n` matrix `M_S`: `[I | e]` on the columns of `S` (the
/// all-ones column placed at the largest element of `S`) and `I` on the
/// complement. Its nullity type is the indicator of supersets of `S`.
pub fn superset_matrix(s: IndexSet, n: usize) -> Result<RationalMatrix, NullityError> {
    if s.len() < 3 {
        return Err(NullityError::SetTooSmall(s.len()));
    }
    let members: Vec<usize> = s.iter().collect();
    let last = *members.last().unwrap();
    let one = BigRational::from_integer(1.into());
    let mut m = RationalMatrix::zeros(n - 1, n);
    let mut row = 0;
    for &c in &members[..members.len() - 1] {
        m.set(row, c - 1, one.clone());
        m.set(row, last - 1, one.clone());
        row += 1;
    }
    for c in s.complement(n).iter() {
        m.set(row, c - 1, one.clone());
        row += 1;
    }
    Ok(m)
}

/// The `1 × n` matrix `M^S` with zeros on `S` and ones elsewhere.
pub fn subset_matrix(s: IndexSet, n: usize) -> Result<RationalMatrix, NullityError> {
    if s.len() + 2 > n {
        return Err(NullityError::SetTooLarge {
            size: s.len(),
            limit: n.saturating_sub(2),
        });
    }
    let row: Vec<i64> = (1..=n).map(|i| if s.contains(i) { 0 } else { 1 }).collect();
    Ok(RationalMatrix::from_int_rows(n, &[row]))
}

/// Nullity type of the dual matroid: `r*(T) = |T| + r(N∖T) − r(N)`.
pub fn dual_nullity_type(nu: &NullityType) -> NullityType {
    let n = nu.n;
    let rank = nu.to_rank();
    let full_rank = rank.entry(IndexSet::full(n)) as i64;
    let entries: Vec<u32> = all_subsets(n)
        .map(|t| {
            let dual_rank = t.len() as i64 + rank.entry(t.complement(n)) as i64 - full_rank;
            (t.len() as i64 - dual_rank) as u32
        })
        .collect();
    NullityType::new(n, entries).expect("dual of a matroid is a matroid")
}

/// True iff `v − w` lies in the span of `e` and the index indicators, decided
/// by exact elimination.
pub fn h_equivalent(v: &[BigRational], w: &[BigRational], n: usize) -> bool {
    assert_eq!(v.len(), 1 << n);
    assert_eq!(w.len(), 1 << n);
    let mut rows = homogeneity_vectors(n);
    let base = rational_rank(&rows);
    rows.push(v.iter().zip(w).map(|(a, b)| a - b).collect());
    rational_rank(&rows) == base
}

/// Canonical representative of `v` modulo the span of `e` and the index
/// indicators: the unique equivalent vector vanishing on the empty set and on
/// every singleton.
pub fn h_canonical(v: &[BigRational], n: usize) -> Vec<BigRational> {
    let base = v[0].clone();
    let slopes: Vec<BigRational> = (1..=n)
        .map(|i| &v[IndexSet::singleton(i).bits() as usize] - &base)
        .collect();
    all_subsets(n)
        .zip(v)
        .map(|(t, x)| {
            let modular: BigRational =
                t.iter().map(|i| &slopes[i - 1]).sum::<BigRational>() + &base;
            x - modular
        })
        .collect()
}

/// Whether the vector is equivalent to zero (orthogonal to every
/// homogeneous formal logarithm).
pub fn h_trivial(v: &[BigRational], n: usize) -> bool {
    h_canonical(v, n).iter().all(Zero::is_zero)
}
