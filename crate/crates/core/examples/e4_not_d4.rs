//! A ratio that passes every subset and superset sum test yet grows without
//! bound along `M6ᵀM6 + e·I`.

use detcone::cone::{build_d_system, build_e_system, membership};
use detcone::known;
use detcone::probe::{eval_family_slope, EpsilonGrid};

fn main() {
    let v = known::e4_not_d4();
    let e4 = membership(&v, &build_e_system(4).unwrap()).unwrap();
    let d4 = membership(&v, &build_d_system(4).unwrap()).unwrap();
    println!("ratio     {v}");
    println!("E4 member {}", e4.is_member());
    println!("D4 member {}", d4.is_member());
    if let Some((label, x)) = &d4.witness {
        println!("witness   {label} -> {x}");
    }

    let report = eval_family_slope(&v, &known::m6(), &EpsilonGrid::default()).unwrap();
    println!();
    print!("{}", report.key_value_block());
    println!("max ratio on grid = {:.3e}", report.max_ratio());
}
