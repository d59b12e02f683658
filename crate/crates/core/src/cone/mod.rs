//! Polyhedral cones in subset-indexed space: the systems cutting out
//! `log(E_n)` and `log(D_n)`, membership with certificates, extreme rays,
//! Koteljanskii-cone feasibility and symmetry orbits.

mod brute;
mod dd;
mod io;
mod kcone;
mod orbit;

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::nullity::{catalog_n3, catalog_n4, counts_to_rationals, d5_constraint_set, h_canonical};
use crate::ratio::{homogeneity_vectors, FormalLog};
use crate::subset::{all_subsets, display_order, IndexSet};

pub use brute::extreme_rays_by_enumeration;
pub use dd::{extreme_rays, Ray};
pub use io::{parse_vector_file, write_rays, write_system, VectorFile, VectorFileError};
pub use kcone::{koteljanskii_cone_membership, koteljanskii_generators, KCertificate, KGenerator};
pub use orbit::{canonical_form, orbit_decompose, orbit_of, Orbit, Symmetry};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error("formal logarithm is not homogeneous")]
    NotHomogeneous,
    #[error("ground size mismatch: system has n = {system}, vector has n = {vector}")]
    GroundSizeMismatch { system: usize, vector: usize },
    #[error("{system} system is not supported for n = {n}")]
    Unsupported { system: &'static str, n: usize },
    #[error("cone is not pointed; it contains the line through {direction}")]
    NotPointed { direction: FormalLog },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// One inequality `cᵀx ≥ 0` with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub vector: Vec<BigRational>,
}

/// Homogeneity equalities plus labeled inequalities over `R^(2^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    n: usize,
    equalities: Vec<Vec<BigRational>>,
    inequalities: Vec<Constraint>,
}

impl ConstraintSystem {
    /// A system whose equalities are the homogeneity vectors.
    pub fn homogeneous(n: usize, inequalities: Vec<Constraint>) -> Self {
        for c in &inequalities {
            assert_eq!(c.vector.len(), 1 << n, "row {} has wrong length", c.label);
        }
        ConstraintSystem {
            n,
            equalities: homogeneity_vectors(n),
            inequalities,
        }
    }

    pub(crate) fn from_parts(
        n: usize,
        equalities: Vec<Vec<BigRational>>,
        inequalities: Vec<Constraint>,
    ) -> Self {
        ConstraintSystem {
            n,
            equalities,
            inequalities,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn equalities(&self) -> &[Vec<BigRational>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    /// Drops inequalities equivalent to an earlier one modulo the homogeneity
    /// space.
    pub fn dedup_equivalent(mut self) -> Self {
        let mut seen = std::collections::HashSet::new();
        let n = self.n;
        self.inequalities
            .retain(|c| seen.insert(h_canonical(&c.vector, n)));
        self
    }

    /// The same system with inequalities listed in the given order.
    pub fn reordered(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.inequalities.len());
        ConstraintSystem {
            n: self.n,
            equalities: self.equalities.clone(),
            inequalities: order
                .iter()
                .map(|&k| self.inequalities[k].clone())
                .collect(),
        }
    }

    /// Whether `v` satisfies every equality and inequality exactly.
    pub fn contains(&self, v: &FormalLog) -> bool {
        v.ground_size() == self.n
            && self.equalities.iter().all(|e| v.dot(e).is_zero())
            && self
                .inequalities
                .iter()
                .all(|c| !v.dot(&c.vector).is_negative())
    }
}

fn counts_row(label: String, counts: &[u32]) -> Constraint {
    Constraint {
        label,
        vector: counts_to_rationals(counts),
    }
}

/// Rows for the elementary conditions: `nul(M^S)` for `|S| ≤ n − 2` (subset
/// sums) followed by `nul(M_S)` for `|S| ≥ 3` (superset sums), each group in
/// display order.
pub fn build_e_system(n: usize) -> Result<ConstraintSystem, ConeError> {
    if !(2..=10).contains(&n) {
        return Err(ConeError::Unsupported { system: "E", n });
    }
    let mut rows = Vec::new();
    for s in display_order(n).into_iter().filter(|s| s.len() + 2 <= n) {
        // nul(M^S)(T) = |T| − [T ⊄ S]
        let counts: Vec<u32> = all_subsets(n)
            .map(|t| t.len() as u32 - u32::from(!t.is_subset_of(s)))
            .collect();
        rows.push(counts_row(format!("M^{s}"), &counts));
    }
    for s in display_order(n).into_iter().filter(|s| s.len() >= 3) {
        // nul(M_S)(T) = [S ⊆ T]
        let counts: Vec<u32> = all_subsets(n)
            .map(|t| u32::from(s.is_subset_of(t)))
            .collect();
        rows.push(counts_row(format!("M_{s}"), &counts));
    }
    Ok(ConstraintSystem::homogeneous(n, rows))
}

/// Rows from every nullity type of an `n`-column matrix, for `n ∈ {3, 4, 5}`.
pub fn build_d_system(n: usize) -> Result<ConstraintSystem, ConeError> {
    let rows: Vec<Constraint> = match n {
        3 => catalog_n3()
            .into_iter()
            .map(|e| counts_row(e.label, e.nullity.entries()))
            .collect(),
        4 => catalog_n4()
            .map_err(|e| ConeError::Internal(e.to_string()))?
            .into_iter()
            .map(|e| counts_row(e.label, e.nullity.entries()))
            .collect(),
        5 => d5_constraint_set()
            .into_iter()
            .map(|r| counts_row(format!("{} {}", r.kind, r.partition), r.nullity.entries()))
            .collect(),
        _ => return Err(ConeError::Unsupported { system: "D", n }),
    };
    Ok(ConstraintSystem::homogeneous(n, rows).dedup_equivalent())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
        })
    }
}

/// Exact inner products against every row of a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    pub inner_products: Vec<(String, BigRational)>,
    /// First violated row, for non-members.
    pub witness: Option<(String, BigRational)>,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    pub fn value_of(&self, label: &str) -> Option<&BigRational> {
        self.inner_products
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, x)| x)
    }
}

/// Decides whether a homogeneous `v` satisfies every inequality of `sys`.
pub fn membership(
    v: &FormalLog,
    sys: &ConstraintSystem,
) -> Result<MembershipCertificate, ConeError> {
    if v.ground_size() != sys.n {
        return Err(ConeError::GroundSizeMismatch {
            system: sys.n,
            vector: v.ground_size(),
        });
    }
    if !v.is_homogeneous() {
        return Err(ConeError::NotHomogeneous);
    }
    let inner_products: Vec<(String, BigRational)> = sys
        .inequalities
        .iter()
        .map(|c| (c.label.clone(), v.dot(&c.vector)))
        .collect();
    let witness = inner_products
        .iter()
        .find(|(_, x)| x.is_negative())
        .cloned();
    Ok(MembershipCertificate {
        verdict: if witness.is_some() {
            Verdict::NonMember
        } else {
            Verdict::Member
        },
        inner_products,
        witness,
    })
}

/// Sets with at least two elements in display order: the free coordinates of
/// a homogeneous vector.
pub(crate) fn reduced_sets(n: usize) -> Vec<IndexSet> {
    display_order(n)
        .into_iter()
        .filter(|s| s.len() >= 2)
        .collect()
}
