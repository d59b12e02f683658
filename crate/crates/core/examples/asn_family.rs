//! Asymptotic nullity type of a polynomial family, read from text.

use detcone::asymptotics::{asn, gram, parse_poly_matrix, principal_minor_poly};
use detcone::subset::display_order;

fn main() {
    let p = parse_poly_matrix("1, e, 0\n0, e, e^2\n0, 0, 1 + e\n").unwrap();
    let g = gram(&p);
    let a = asn(&p).unwrap();
    for s in display_order(3) {
        println!(
            "{:>8} d={}  minor = {}",
            s.to_string(),
            a.entry(s),
            principal_minor_poly(&g, s)
        );
    }
}
