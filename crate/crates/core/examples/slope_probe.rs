//! Slope of a random ratio along a random rank-deficient family, compared
//! with the inner product against the nullity type.

use detcone::nullity::nullity_type;
use detcone::probe::{eval_family_slope, random_deficient_matrix, random_homogeneous, EpsilonGrid};
use detcone::reproduce::slope_pair_grid;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid: EpsilonGrid = slope_pair_grid();
    for _ in 0..8 {
        let v = random_homogeneous(&mut rng, 4, 3);
        let m = random_deficient_matrix(&mut rng, 4, 3);
        let predicted = v.dot_counts(nullity_type(&m).entries());
        let r = eval_family_slope(&v, &m, &grid).unwrap();
        println!(
            "rows {} predicted {predicted:>4} fitted {:>8.4} {:?}",
            m.rows(),
            r.fitted_slope,
            r.observed
        );
    }
}
