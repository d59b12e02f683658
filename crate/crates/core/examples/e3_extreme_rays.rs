//! Extreme rays of the subset/superset cone on three indices.

use detcone::cone::{build_e_system, extreme_rays, write_rays};

fn main() {
    let sys = build_e_system(3).expect("n = 3");
    let rays = extreme_rays(&sys).expect("pointed cone");
    let labeled: Vec<_> = rays
        .iter()
        .map(|r| (Some(r.to_formal_log().to_string()), r))
        .collect();
    print!("{}", write_rays(3, &labeled));
    let kot = rays
        .iter()
        .filter(|r| r.to_formal_log().is_koteljanskii_ray())
        .count();
    println!("# {} rays, {kot} Koteljanskii", rays.len());
}
