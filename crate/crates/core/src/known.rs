//! Named ratios and matrices used throughout the examples and checks.

use crate::asymptotics::{parse_poly_matrix, PolyMatrix};
use crate::nullity::{catalog_n3, RationalMatrix};
use crate::ratio::{parse_ratio, FormalLog};

/// Bounded on `4 × 4` matrices, not a product of Koteljanskii ratios.
pub const R1: &str = "{1,2,4}{1,3,4}{2,3}{1}{4} / {1,2}{1,3}{1,4}{2,4}{3,4}";
pub const R2: &str = "{1,2,3,4}^2{2,3}{2,4}{3,4}{1}{} / {1,2,3}{1,2,4}{1,3,4}{2,3,4}{2}{3}{4}";
pub const R3: &str = "{1,2,3,4}{2,3}{2,4}{3,4}{1}^2{} / {2,3,4}{1,2}{1,3}{1,4}{2}{3}{4}";

/// Satisfies every subset and superset sum condition on four indices but is
/// unbounded.
pub const E4_NOT_D4: &str =
    "{1,2,3,4}{1,3,4}{1,2}{1,4}{2,3}{2,4}{3}{} / {1,2,3}{1,2,4}{2,3,4}{1,3}{3,4}{1}{2}{4}";

/// In the dual nullity cone for five indices, yet unbounded along
/// [`ASN_FAMILY`].
pub const Q5: &str = "{1,2,3,4,5}{1,3,4,5}{2,3,4,5}{1,2,3}{1,2,5}{3,4}{4,5}{1}{2}{} / \
                      {1,2,3,4}{1,2,3,5}{1,4,5}{2,4,5}{3,4,5}{1,2}{1,3}{2,3}{4}{5}";

pub const ASN_FAMILY: &str = "\
1, 1, 1, 1, 1
0, e, 0, 1, 2
0, 0, e, 1, 2
0, 0, 0, e, 0
0, 0, 0, 0, e
";

/// The Koteljanskii ratios on three indices.
pub const E3_RAYS: [&str; 6] = [
    "{1,2}{} / {1}{2}",
    "{1,3}{} / {1}{3}",
    "{2,3}{} / {2}{3}",
    "{1,2,3}{1} / {1,2}{1,3}",
    "{1,2,3}{2} / {1,2}{2,3}",
    "{1,2,3}{3} / {1,3}{2,3}",
];

/// Orbit representatives, under permutation and complementation, of the
/// extreme rays of the bounded cone on four indices.
pub const D4_GENERATORS: [(&str, &str); 5] = [
    ("hadamard", "{1,2}{} / {1}{2}"),
    ("koteljanskii", "{1,2,3}{1} / {1,2}{1,3}"),
    ("R1", R1),
    ("R2", R2),
    ("R3", R3),
];

/// Factorizations into Koteljanskii ratios and one final ratio `{1}{23}/{2}{13}`.
pub const FACTORIZATIONS: [(&str, &str, &[&str]); 3] = [
    (
        "R1",
        R1,
        &[
            "{1,2,4}{2} / {1,2}{2,4}",
            "{1,3,4}{4} / {1,4}{3,4}",
            "{1}{2,3} / {2}{1,3}",
        ],
    ),
    (
        "R2",
        R2,
        &[
            "{1,2,3,4}{2,4} / {1,2,4}{2,3,4}",
            "{1,2,3,4}{1,3} / {1,2,3}{1,3,4}",
            "{3,4}{} / {3}{4}",
            "{1}{2,3} / {2}{1,3}",
        ],
    ),
    (
        "R3",
        R3,
        &[
            "{1,2,3,4}{2,4} / {1,2,4}{2,3,4}",
            "{1,2,4}{1} / {1,2}{1,4}",
            "{3,4}{} / {3}{4}",
            "{1}{2,3} / {2}{1,3}",
        ],
    ),
];

/// Formal logarithm of a ratio literal on `n` indices.
///
/// Panics on malformed input; meant for the constants above.
pub fn log_of(text: &str, n: usize) -> FormalLog {
    parse_ratio(text, Some(n))
        .unwrap_or_else(|e| panic!("bad ratio literal {text:?}: {e}"))
        .formal_log()
}

pub fn r1() -> FormalLog {
    log_of(R1, 4)
}

pub fn r2() -> FormalLog {
    log_of(R2, 4)
}

pub fn r3() -> FormalLog {
    log_of(R3, 4)
}

pub fn e4_not_d4() -> FormalLog {
    log_of(E4_NOT_D4, 4)
}

pub fn q5() -> FormalLog {
    log_of(Q5, 5)
}

pub fn asn_family() -> PolyMatrix {
    parse_poly_matrix(ASN_FAMILY).expect("valid literal")
}

/// Columns 3 and 4 parallel.
pub fn m6() -> RationalMatrix {
    RationalMatrix::from_int_rows(4, &[[1, 0, 1, 1], [0, 1, 1, 1]])
}

/// Four columns in general position in the plane.
pub fn m7() -> RationalMatrix {
    RationalMatrix::from_int_rows(4, &[[1, 1, 1, 1], [0, 1, 2, 3]])
}

/// Matrices on three columns whose nullity types cut out the bounded cone.
pub fn example1_matrices() -> Vec<RationalMatrix> {
    catalog_n3().into_iter().map(|e| e.matrix).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{orbit_of, Symmetry};
    use crate::nullity::nullity_type;
    use crate::subset::Permutation;
    use num_rational::BigRational;

    #[test]
    fn literals_parse_and_are_homogeneous() {
        for v in [r1(), r2(), r3(), e4_not_d4(), q5()] {
            assert!(v.is_homogeneous());
        }
        for (_, text) in D4_GENERATORS {
            assert!(log_of(text, 4).is_homogeneous());
        }
        assert_eq!(asn_family().size(), 5);
    }

    #[test]
    fn counterexample_pairs_with_m6() {
        let nu = nullity_type(&m6());
        assert_eq!(
            e4_not_d4().dot_counts(nu.entries()),
            BigRational::from_integer((-1).into())
        );
    }

    #[test]
    fn four_index_ratios_are_fixed_by_swapping_2_and_3() {
        let swap = Permutation::transposition(4, 2, 3);
        for v in [r1(), r2(), r3()] {
            assert_eq!(v.apply_permutation(&swap), v);
        }
    }

    #[test]
    fn q_is_self_complementary() {
        assert_eq!(q5().apply_complement(), q5());
        let r2_images = orbit_of(&r2(), Symmetry::Permutations);
        assert!(!r2_images.contains(&r2().apply_complement()));
    }

    #[test]
    fn literals_round_trip() {
        for v in [r1(), r2(), r3(), e4_not_d4(), q5()] {
            let n = v.ground_size();
            assert_eq!(log_of(&v.to_string(), n), v);
        }
    }

    #[test]
    fn example1_has_five_matrices() {
        assert_eq!(example1_matrices().len(), 5);
        assert!(example1_matrices().iter().all(|m| m.cols() == 3));
    }
}
