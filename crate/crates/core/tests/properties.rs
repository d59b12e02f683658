use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use detcone::asymptotics::{parse_polynomial, Polynomial};
use detcone::nullity::{nullity_type, RationalMatrix};
use detcone::probe::random_homogeneous;
use detcone::ratio::{evaluate_log_ratio, koteljanskii_log, parse_ratio, FormalLog};
use detcone::subset::{IndexSet, Permutation};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn homogeneous(n: usize) -> impl Strategy<Value = FormalLog> {
    any::<u64>()
        .prop_map(move |seed| random_homogeneous(&mut ChaCha8Rng::seed_from_u64(seed), n, 3))
}

/// `GᵀG + I/10` for a random `G`.
fn pd_matrix(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-2.0f64..2.0, n * n).prop_map(move |xs| {
        let g = DMatrix::from_vec(n, n, xs);
        g.transpose() * &g + DMatrix::identity(n, n) * 0.1
    })
}

fn int_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3, 2usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r)
            .prop_map(move |rows| (c, rows))
    })
}

proptest! {
    #[test]
    fn permutation_action_composes(v in homogeneous(4), s in permutation(4), t in permutation(4)) {
        let stepwise = v.apply_permutation(&t).apply_permutation(&s);
        prop_assert_eq!(stepwise, v.apply_permutation(&s.after(&t)));
        prop_assert_eq!(v.apply_permutation(&s).apply_permutation(&s.inverse()), v);
    }

    #[test]
    fn symmetries_keep_homogeneity(v in homogeneous(4), s in permutation(4)) {
        prop_assert!(v.apply_permutation(&s).is_homogeneous());
        prop_assert!(v.apply_complement().is_homogeneous());
        prop_assert_eq!(v.apply_complement().apply_complement(), v);
    }

    #[test]
    fn homogeneous_ratios_ignore_diagonal_scaling(
        v in homogeneous(4),
        a in pd_matrix(4),
        d in prop::collection::vec(0.2f64..5.0, 4),
    ) {
        let dm = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d));
        let scaled = &dm * &a * &dm;
        let x = evaluate_log_ratio(&v, &a).unwrap();
        let y = evaluate_log_ratio(&v, &scaled).unwrap();
        prop_assert!((x - y).abs() < 1e-7 * (1.0 + x.abs()), "{} vs {}", x, y);
    }

    #[test]
    fn ratio_text_round_trips(v in homogeneous(4)) {
        let back = parse_ratio(&v.to_string(), Some(4)).unwrap().formal_log();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn polynomial_text_round_trips(coeffs in prop::collection::vec(-5i64..=5, 0..6)) {
        let p = Polynomial::from_integers(&coeffs);
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn koteljanskii_ratios_are_at_most_one(a in pd_matrix(4), s in 0u32..16, t in 0u32..16) {
        let v = koteljanskii_log(IndexSet::from_bits(s), IndexSet::from_bits(t), 4);
        prop_assert!(evaluate_log_ratio(&v, &a).unwrap() <= 1e-9);
    }

    #[test]
    fn nullity_type_follows_column_permutation((c, rows) in int_matrix(), seed in any::<u64>()) {
        let m = RationalMatrix::from_int_rows(c, &rows);
        let all = Permutation::all(c);
        let sigma = &all[(seed % all.len() as u64) as usize];
        prop_assert_eq!(nullity_type(&m.permute_columns(sigma)), nullity_type(&m).permuted(sigma));
    }
}
