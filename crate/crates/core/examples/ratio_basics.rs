//! Parse a ratio, inspect its formal logarithm and evaluate it on a matrix.

use detcone::ratio::{evaluate_log_ratio, parse_ratio};
use nalgebra::DMatrix;

fn main() {
    let spec = parse_ratio("{1,2,3}{1} / {1,2}{1,3}", None).expect("valid ratio");
    let v = spec.formal_log();
    println!("ratio        {spec}");
    println!("homogeneous  {}", v.is_homogeneous());
    for (s, x) in v.support() {
        println!("  {s:>9} {x}");
    }

    let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0]);
    let value = evaluate_log_ratio(&v, &a).expect("positive definite").exp();
    println!("value on A   {value:.6} (at most 1)");

    let relabeled = v.delete_index(1);
    println!("delete 1     {relabeled}");
}
