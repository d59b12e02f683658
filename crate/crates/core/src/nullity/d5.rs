//! Constraint rows for five columns.
//!
//! Every matroid on five elements has rank at most 2 or corank at most 2, and
//! all of these are representable over the rationals, so the rank-≤2 types
//! (one per loop set and partition into parallel classes) together with their
//! duals cover every nullity type of a 5-column matrix. This argument breaks
//! down from seven columns on, where non-representable matroids appear.

use std::collections::HashSet;
use std::fmt;

use super::{
    all_partitions, dual_nullity_type, h_canonical, partition_nullity, NullityType, Partition,
};

/// Where a five-column row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum D5RowKind {
    /// No zero columns and one block or at least three blocks.
    LoopFree,
    /// No zero columns and exactly two blocks: a direct sum, implied by the
    /// rows of its summands.
    TwoBlock,
    /// At least one zero column.
    WithLoops,
    /// Dual of a rank-≤2 type.
    Dual,
}

impl fmt::Display for D5RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            D5RowKind::LoopFree => "loop-free",
            D5RowKind::TwoBlock => "two-block",
            D5RowKind::WithLoops => "with-loops",
            D5RowKind::Dual => "dual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D5Row {
    pub label: String,
    pub kind: D5RowKind,
    pub partition: Partition,
    pub nullity: NullityType,
}

fn kind_of(p: &Partition) -> D5RowKind {
    if !p.is_loop_free() {
        D5RowKind::WithLoops
    } else if p.blocks().len() == 2 {
        D5RowKind::TwoBlock
    } else {
        D5RowKind::LoopFree
    }
}

/// All nullity types of 5-column matrices of rank at most 2, and their
/// duals, with rows equivalent modulo the homogeneity space removed (the
/// first occurrence is kept).
///
/// Ordering: loop-free rows, two-block rows, rows with loops, then duals in
/// the same order.
pub fn d5_constraint_set() -> Vec<D5Row> {
    let n = 5;
    let mut primal: Vec<D5Row> = all_partitions(n)
        .into_iter()
        .map(|p| D5Row {
            label: format!("part {p}"),
            kind: kind_of(&p),
            nullity: partition_nullity(&p),
            partition: p,
        })
        .collect();
    let rank = |k: D5RowKind| match k {
        D5RowKind::LoopFree => 0,
        D5RowKind::TwoBlock => 1,
        D5RowKind::WithLoops => 2,
        D5RowKind::Dual => 3,
    };
    primal.sort_by_key(|r| rank(r.kind));
    let duals: Vec<D5Row> = primal
        .iter()
        .map(|r| D5Row {
            label: format!("dual {}", r.partition),
            kind: D5RowKind::Dual,
            nullity: dual_nullity_type(&r.nullity),
            partition: r.partition.clone(),
        })
        .collect();

    let mut seen = HashSet::new();
    primal
        .into_iter()
        .chain(duals)
        .filter(|r| seen.insert(h_canonical(&r.nullity.to_rationals(), n)))
        .collect()
}
