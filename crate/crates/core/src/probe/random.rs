//! Random inputs for slope experiments.

use num_bigint::BigInt;
use rand::Rng;

use crate::nullity::RationalMatrix;
use crate::ratio::FormalLog;
use crate::subset::all_subsets;

/// Homogeneous formal logarithm whose entries on sets of size at least two
/// are uniform in `-bound..=bound`; the rest are forced by homogeneity.
pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, bound: i64) -> FormalLog {
    let mut e = vec![BigInt::from(0); 1 << n];
    for s in all_subsets(n).filter(|s| s.len() >= 2) {
        e[s.bits() as usize] = BigInt::from(rng.random_range(-bound..=bound));
    }
    for i in 1..=n {
        let sum: BigInt = all_subsets(n)
            .filter(|s| s.len() >= 2 && s.contains(i))
            .map(|s| e[s.bits() as usize].clone())
            .sum();
        e[1 << (i - 1)] = -sum;
    }
    let total: BigInt = e.iter().sum();
    e[0] = -total;
    FormalLog::from_integers(n, &e).expect("entries sum to zero")
}

/// Integer matrix with fewer rows than columns, entries in `-bound..=bound`.
pub fn random_deficient_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RationalMatrix {
    let r = rng.random_range(1..n);
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..n).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect();
    RationalMatrix::from_int_rows(n, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn homogeneous_and_deficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=4 {
            assert!(random_homogeneous(&mut rng, n, 2).is_homogeneous());
            let m = random_deficient_matrix(&mut rng, n, 2);
            assert!(m.rows() < n && m.cols() == n);
        }
    }
}
