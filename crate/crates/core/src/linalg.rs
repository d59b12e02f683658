//! Exact linear algebra over the integers and rationals.
//!
//! Ranks use fraction-free (Bareiss) elimination on integer rows; rational
//! inputs are cleared of denominators row by row first, which leaves the rank
//! unchanged.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scales a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Rank of an integer matrix given as rows, by fraction-free elimination.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let updated = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = updated / &prev;
            }
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix given as rows.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    bareiss_rank(rows.iter().map(|r| clear_denominators(r)).collect())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : rows · x = 0}` as primitive integer vectors, one per free
/// column (in increasing free-column order).
pub fn nullspace_basis(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -work[k][free].clone();
        }
        let mut ints = clear_denominators(&v);
        make_primitive(&mut ints);
        basis.push(ints);
    }
    basis
}

/// Exact dot product of integer vectors.
pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Exact dot product of rational vectors.
pub fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn cofactor_det(a: &[Vec<BigRational>], rows: &[usize], cols: &mut Vec<usize>) -> BigRational {
    let Some((&r, rest)) = rows.split_first() else {
        return BigRational::one();
    };
    let mut acc = BigRational::zero();
    for k in 0..cols.len() {
        let c = cols.remove(k);
        if !a[r][c].is_zero() {
            let term = &a[r][c] * cofactor_det(a, rest, cols);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        cols.insert(k, c);
    }
    acc
}

fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..m)
        .flat_map(|last| {
            subsets_of_size(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Rank as the size of the largest nonvanishing minor, each minor expanded
/// by cofactors. Exponential; for cross-checking small matrices.
pub fn rank_by_minors(a: &[Vec<BigRational>]) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for k in (1..=m.min(n)).rev() {
        let col_sets = subsets_of_size(n, k);
        for rows in subsets_of_size(m, k) {
            for cols in &col_sets {
                if !cofactor_det(a, &rows, &mut cols.clone()).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Sign of an integer as -1, 0, 1.
pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn minor_rank_matches_elimination() {
        let q = |rows: &[&[i64]]| -> Vec<Vec<BigRational>> {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect()
        };
        for rows in [
            q(&[&[1, 2, 3], &[2, 4, 6]]),
            q(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]),
            q(&[&[0, 0], &[0, 0]]),
            q(&[&[2, 1], &[1, 2]]),
        ] {
            assert_eq!(rank_by_minors(&rows), rational_rank(&rows));
        }
    }

    #[test]
    fn bareiss_rank_small_cases() {
        assert_eq!(bareiss_rank(int_rows(&[&[1, 0, 1], &[0, 1, 1]])), 2);
        assert_eq!(bareiss_rank(int_rows(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(bareiss_rank(int_rows(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(
            bareiss_rank(int_rows(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])),
            2
        );
        assert_eq!(bareiss_rank(Vec::new()), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows: Vec<Vec<BigRational>> = [[1i64, 1, 1, 1], [0, 1, 2, 3]]
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let basis = nullspace_basis(&rows, 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in &rows {
                let ints = clear_denominators(r);
                assert!(dot_int(&ints, v).is_zero());
            }
        }
    }
}
