//! Largest values found for the named four-index ratios, and the
//! counterexample's divergence.

use detcone::known;
use detcone::probe::{bound_search, SamplerConfig};

fn main() {
    let cfg = SamplerConfig::new(1, 20_000, 4).unwrap();
    for (name, v) in [
        ("R1", known::r1()),
        ("R2", known::r2()),
        ("R3", known::r3()),
        ("E4-not-D4", known::e4_not_d4()),
    ] {
        let r = bound_search(&v, &cfg);
        let family = r.divergent_family.as_deref().unwrap_or("-");
        println!(
            "{name:>9} max {:>14.6} divergent {:<5} {family}",
            r.max_ratio, r.divergent
        );
    }
}
