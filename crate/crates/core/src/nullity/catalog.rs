//! The nullity types that define the dual nullity cone for `n = 3` and `n = 4`.

use super::{
    nullity_type, subset_matrix, superset_matrix, NullityError, NullityType, RationalMatrix,
};
use crate::subset::{IndexSet, Permutation};

/// A labeled nullity type together with a matrix realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub matrix: RationalMatrix,
    pub nullity: NullityType,
}

impl CatalogEntry {
    fn from_matrix(label: String, matrix: RationalMatrix) -> Self {
        let nullity = nullity_type(&matrix);
        CatalogEntry {
            label,
            matrix,
            nullity,
        }
    }
}

/// `M^∅`, `M^{1}`, `M^{2}`, `M^{3}` and `M_{123}` on three columns.
pub fn catalog_n3() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for s in [&[][..], &[1], &[2], &[3]] {
        let s = IndexSet::from_indices(s.iter().copied());
        out.push(CatalogEntry::from_matrix(
            format!("M^{s}"),
            subset_matrix(s, 3).expect("|S| <= 1"),
        ));
    }
    let full = IndexSet::full(3);
    out.push(CatalogEntry::from_matrix(
        format!("M_{full}"),
        superset_matrix(full, 3).expect("|S| = 3"),
    ));
    out
}

/// How a base matrix names its column-permuted copies: a prefix followed by
/// the image of a marker set.
struct Base {
    prefix: &'static str,
    marker: IndexSet,
    matrix: RationalMatrix,
}

fn n4_bases() -> Vec<Base> {
    let set = |ix: &[usize]| IndexSet::from_indices(ix.iter().copied());
    let mut bases = Vec::new();
    for s in [set(&[]), set(&[1]), set(&[1, 2])] {
        bases.push(Base {
            prefix: "M^",
            marker: s,
            matrix: subset_matrix(s, 4).expect("|S| <= 2"),
        });
    }
    for s in [set(&[1, 2, 3]), set(&[1, 2, 3, 4])] {
        bases.push(Base {
            prefix: "M_",
            marker: s,
            matrix: superset_matrix(s, 4).expect("|S| >= 3"),
        });
    }
    bases.push(Base {
        prefix: "M6:",
        marker: set(&[3, 4]),
        matrix: RationalMatrix::from_int_rows(4, &[[1, 0, 1, 1], [0, 1, 1, 1]]),
    });
    bases.push(Base {
        prefix: "M7",
        marker: IndexSet::EMPTY,
        matrix: RationalMatrix::from_int_rows(4, &[[1, 1, 1, 1], [0, 1, 2, 3]]),
    });
    bases
}

/// The 23 distinct nullity types of column permutations of `M^∅`, `M^{1}`,
/// `M^{12}`, `M_{123}`, `M_{1234}`, `M6` and `M7`.
///
/// `M6` copies are labeled by their pair of parallel columns.
pub fn catalog_n4() -> Result<Vec<CatalogEntry>, NullityError> {
    let perms = Permutation::all(4);
    let mut out: Vec<CatalogEntry> = Vec::new();
    for base in n4_bases() {
        for sigma in &perms {
            let matrix = base.matrix.permute_columns(sigma);
            let label = if base.prefix == "M7" {
                "M7".to_string()
            } else {
                format!("{}{}", base.prefix, sigma.apply_set(base.marker))
            };
            let entry = CatalogEntry::from_matrix(label, matrix);
            if !out.iter().any(|e| e.nullity == entry.nullity) {
                out.push(entry);
            }
        }
    }
    if out.len() != 23 {
        return Err(NullityError::CatalogCount {
            found: out.len(),
            expected: 23,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::all_subsets;

    #[test]
    fn n3_matrices_match_listed_rows() {
        let cat = catalog_n3();
        let rows: Vec<String> = cat.iter().map(|e| e.matrix.to_string()).collect();
        assert_eq!(
            rows,
            vec!["1 1 1\n", "0 1 1\n", "1 0 1\n", "1 1 0\n", "1 0 1\n0 1 1\n"]
        );
    }

    #[test]
    fn n4_catalog_counts() {
        let cat = catalog_n4().unwrap();
        assert_eq!(cat.len(), 23);
        let count = |prefix: &str| cat.iter().filter(|e| e.label.starts_with(prefix)).count();
        assert_eq!(count("M^"), 1 + 4 + 6);
        assert_eq!(count("M_"), 4 + 1);
        assert_eq!(count("M6:"), 6);
        assert_eq!(count("M7"), 1);
        let labels: std::collections::BTreeSet<_> = cat.iter().map(|e| &e.label).collect();
        assert_eq!(labels.len(), 23);
    }

    #[test]
    fn m7_member() {
        let cat = catalog_n4().unwrap();
        let m7 = cat.iter().find(|e| e.label == "M7").unwrap();
        for t in all_subsets(4) {
            assert_eq!(m7.nullity.entry(t), t.len().saturating_sub(2) as u32);
        }
    }

    #[test]
    fn m6_orbit_is_one_type_per_pair() {
        let cat = catalog_n4().unwrap();
        for e in cat.iter().filter(|e| e.label.starts_with("M6:")) {
            let pairs: Vec<IndexSet> = all_subsets(4)
                .filter(|t| t.len() == 2 && e.nullity.entry(*t) == 1)
                .collect();
            assert_eq!(pairs.len(), 1);
            assert_eq!(e.label, format!("M6:{}", pairs[0]));
        }
    }
}
