//! The 46 extreme rays on four indices grouped into orbits under
//! permutation and complementation.

use std::time::Instant;

use detcone::cone::{build_d_system, canonical_form, extreme_rays, orbit_decompose, Symmetry};
use detcone::known::{log_of, D4_GENERATORS};

fn main() {
    let start = Instant::now();
    let sys = build_d_system(4).expect("n = 4");
    let rays = extreme_rays(&sys).expect("pointed cone");
    let logs: Vec<_> = rays.iter().map(|r| r.to_formal_log()).collect();
    println!(
        "{} rays from {} inequalities in {:.3?}",
        rays.len(),
        sys.inequalities().len(),
        start.elapsed()
    );

    let sym = Symmetry::PermutationsAndComplement;
    for orbit in orbit_decompose(&logs, sym) {
        let name = D4_GENERATORS
            .iter()
            .find(|(_, text)| canonical_form(&log_of(text, 4), sym) == orbit.representative)
            .map_or("?", |(name, _)| name);
        println!(
            "{name:>13} x{:<3} {}",
            orbit.members.len(),
            orbit.representative
        );
    }
}
