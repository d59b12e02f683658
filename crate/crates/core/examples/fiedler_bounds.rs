//! Fiedler's inequality and its corollary over seeded random matrices.

use detcone::probe::{corollary_check, fiedler_check, sample_all, SamplerConfig, CHECK_TOLERANCE};

fn main() {
    for n in 3..=6 {
        let cfg = SamplerConfig::new(11, 2_000, n).unwrap();
        let rows = sample_all(&cfg, |_, a| {
            let res = fiedler_check(a, CHECK_TOLERANCE).unwrap().min_residual();
            let cor = (1..=n)
                .map(|i| corollary_check(a, i).unwrap())
                .fold(f64::MIN, f64::max);
            (res, cor)
        });
        let min_res = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let max_cor = rows.iter().map(|r| r.1).fold(f64::MIN, f64::max);
        println!(
            "n={n} min residual {min_res:.3e}  max corollary {max_cor:.4} <= {}",
            (n - 1) * (n - 1)
        );
    }
}
