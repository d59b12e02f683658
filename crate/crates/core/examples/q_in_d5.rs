//! A ratio in the dual nullity cone on five indices that is still unbounded,
//! detected through the asymptotic nullity type of a polynomial family.

use detcone::asymptotics::{asn, asn_inner_product};
use detcone::cone::{build_d_system, koteljanskii_cone_membership, membership};
use detcone::known;
use detcone::probe::{eval_poly_family_slope, EpsilonGrid};

fn main() {
    let q = known::q5();
    let sys = build_d_system(5).unwrap();
    let cert = membership(&q, &sys).unwrap();
    println!(
        "D5 rows {}, member {}",
        sys.inequalities().len(),
        cert.is_member()
    );

    for i in 1..=5 {
        let k = koteljanskii_cone_membership(&q.delete_index(i)).unwrap();
        println!("delete {i}: Koteljanskii product {}", k.is_member());
    }

    let p = known::asn_family();
    let a = asn(&p).unwrap();
    println!("asn(P)  {:?}", a.entries());
    println!("log(Q) . asn(P) = {}", asn_inner_product(&q, &a).unwrap());

    let report = eval_poly_family_slope(&q, &p, &EpsilonGrid::default()).unwrap();
    println!(
        "fitted slope {:.4}, predicted {}",
        report.fitted_slope, report.predicted_slope
    );
}
