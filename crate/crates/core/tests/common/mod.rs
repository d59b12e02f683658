//! Slow, direct oracles shared by the integration tests. Nothing here calls
//! into the library's elimination, cone or asymptotics code.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn popcount(s: usize) -> usize {
    s.count_ones() as usize
}

/// Determinant by expansion along the first row.
pub fn cofactor_det(a: &[Vec<BigRational>]) -> BigRational {
    let k = a.len();
    if k == 0 {
        return BigRational::one();
    }
    let mut total = BigRational::zero();
    for c in 0..k {
        if a[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut cur, &mut out);
    out
}

/// Largest `k` with a nonzero `k × k` minor.
pub fn rank_by_minor_expansion(a: &[Vec<BigRational>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub: Vec<Vec<BigRational>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect())
                    .collect();
                if !cofactor_det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Nullity of every column subset, indexed by bitmask, through minors.
pub fn nullity_by_minors(a: &[Vec<BigRational>], n: usize) -> Vec<u32> {
    (0..1usize << n)
        .map(|t| {
            let cols: Vec<usize> = (0..n).filter(|j| t >> j & 1 == 1).collect();
            let sub: Vec<Vec<BigRational>> = a
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            (cols.len() - rank_by_minor_expansion(&sub)) as u32
        })
        .collect()
}

/// Plain Gauss-Jordan nullspace.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales to coprime integers.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Sum, and one row per index, of the homogeneity conditions.
pub fn homogeneity_rows(n: usize) -> Vec<Vec<BigRational>> {
    let mut rows = vec![vec![q(1); 1 << n]];
    for i in 0..n {
        rows.push((0..1usize << n).map(|s| q((s >> i & 1) as i64)).collect());
    }
    rows
}

/// Superset sums and subset sums for every `S`, straight from their
/// definition.
pub fn subset_superset_rows(n: usize) -> Vec<Vec<BigRational>> {
    let mut rows = Vec::new();
    for s in 0..1usize << n {
        rows.push((0..1usize << n).map(|t| q(i64::from(t & s == s))).collect());
        rows.push((0..1usize << n).map(|t| q(i64::from(t & s == t))).collect());
    }
    rows
}

/// Extreme rays by trying every set of `d − 1` tight inequalities, where `d`
/// is the dimension of the equality space.
pub fn brute_force_rays(
    n: usize,
    equalities: &[Vec<BigRational>],
    inequalities: &[Vec<BigRational>],
) -> Vec<Vec<BigInt>> {
    let dim = 1usize << n;
    let d = nullspace(equalities, dim).len();
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    for combo in combinations(inequalities.len(), d - 1) {
        let mut rows = equalities.to_vec();
        rows.extend(combo.iter().map(|&i| inequalities[i].clone()));
        let ns = nullspace(&rows, dim);
        if ns.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let v: Vec<BigRational> = ns[0].iter().map(|x| x * q(sign)).collect();
            if inequalities.iter().all(|row| !dot(row, &v).is_negative()) {
                let p = primitive(&v);
                if !found.contains(&p) {
                    found.push(p);
                }
            }
        }
    }
    found.sort();
    found
}

/// Formal log of `(S∪T)(S∩T) / (S·T)` for `|S| = |T| = |S∩T| + 1`.
pub fn koteljanskii_ray_vectors(n: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for s in 0..1usize << n {
        for t in 0..1usize << n {
            if popcount(s) != popcount(t) || popcount(s & t) + 1 != popcount(s) {
                continue;
            }
            let mut v = vec![BigInt::zero(); 1 << n];
            v[s | t] += 1;
            v[s & t] += 1;
            v[s] -= 1;
            v[t] -= 1;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

/// Image of a subset-indexed vector under the index permutation `perm`
/// (0-based images).
pub fn permute_vector<T: Clone>(v: &[T], perm: &[usize]) -> Vec<T> {
    let mut out = v.to_vec();
    for (s, x) in v.iter().enumerate() {
        let mut image = 0;
        for (i, &p) in perm.iter().enumerate() {
            if s >> i & 1 == 1 {
                image |= 1 << p;
            }
        }
        out[image] = x.clone();
    }
    out
}

pub fn complement_vector<T: Clone>(v: &[T]) -> Vec<T> {
    let full = v.len() - 1;
    (0..v.len()).map(|s| v[full ^ s].clone()).collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Log of a ratio of principal minors from LU determinants.
pub fn log_ratio_by_lu(v: &[f64], a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    (0..1usize << n)
        .filter(|&s| v[s] != 0.0)
        .map(|s| {
            let idx: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
            let sub = a.select_rows(&idx).select_columns(&idx);
            let det = if idx.is_empty() {
                1.0
            } else {
                sub.lu().determinant()
            };
            v[s] * det.ln()
        })
        .sum()
}

/// Exact principal minor on `s` of `PᵀP`.
pub fn gram_minor_at(p: &[Vec<BigRational>], s: usize) -> BigRational {
    let n = p.len();
    let idx: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
    let g: Vec<Vec<BigRational>> = idx
        .iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| (0..n).map(|k| &p[k][i] * &p[k][j]).sum())
                .collect()
        })
        .collect();
    cofactor_det(&g)
}
