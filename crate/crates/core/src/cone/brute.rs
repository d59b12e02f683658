//! Extreme rays by enumerating every set of `d − 1` tight inequalities.
//! Exponential in the number of rows; meant for cross-checking small systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dd::{Frame, Ray};
use super::ConstraintSystem;
use crate::linalg::{bareiss_rank, dot_int, make_primitive, nullspace_basis};

/// Calls `f` on every `k`-subset of `0..m` in lexicographic order.
fn for_each_combination(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Same output as [`super::extreme_rays`] for pointed cones.
pub fn extreme_rays_by_enumeration(sys: &ConstraintSystem) -> Vec<Ray> {
    let n = sys.ground_size();
    let frame = Frame::new(sys);
    let d = frame.dim();
    let rows: Vec<Vec<BigInt>> = sys
        .inequalities()
        .iter()
        .map(|c| frame.reduce_row(&c.vector))
        .collect();
    let mut out: Vec<Ray> = Vec::new();
    if d == 0 {
        return out;
    }
    for_each_combination(rows.len(), d - 1, |pick| {
        let tight: Vec<Vec<BigInt>> = pick.iter().map(|&k| rows[k].clone()).collect();
        if bareiss_rank(tight.clone()) != d - 1 {
            return;
        }
        let as_rat: Vec<Vec<BigRational>> = tight
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let dir = nullspace_basis(&as_rat, d).remove(0);
        for sign in [1, -1] {
            let x: Vec<BigInt> = dir.iter().map(|v| v * sign).collect();
            if rows.iter().all(|r| !dot_int(r, &x).is_negative()) {
                let mut entries = frame.lift(&x);
                make_primitive(&mut entries);
                if entries.iter().any(|e| !e.is_zero()) {
                    out.push(Ray::from_parts(n, entries));
                }
            }
        }
    });
    out.sort_by_cached_key(Ray::ordered_entries);
    out.dedup();
    out
}
