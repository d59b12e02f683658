//! Nullity and rank types of a small matrix, printed by subset size.

use detcone::known;
use detcone::nullity::{nullity_type, rank_type};
use detcone::subset::display_order;

fn main() {
    let m = known::m6();
    let nu = nullity_type(&m);
    let rho = rank_type(&m);
    println!("{:>10} {:>7} {:>4}", "set", "nullity", "rank");
    for s in display_order(4) {
        println!(
            "{:>10} {:>7} {:>4}",
            s.to_string(),
            nu.entry(s),
            rho.entry(s)
        );
    }
    let pairing = known::e4_not_d4().dot_counts(nu.entries());
    println!("counterexample . nul(M6) = {pairing}");
}
