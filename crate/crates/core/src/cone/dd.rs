//! Double description enumeration of extreme rays in exact integer
//! arithmetic.
//!
//! The cone lives in the solution space of the equalities. We pick an integer
//! basis of that space (one basis vector per free coordinate, free
//! coordinates being the sets of size at least two for the homogeneity
//! equalities), rewrite every inequality in those coordinates, and run the
//! standard incremental insertion with the algebraic adjacency test: two rays
//! are adjacent iff the inserted rows tight at both have rank `d − 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{ConeError, ConstraintSystem};
use crate::linalg::{bareiss_rank, clear_denominators, dot_int, make_primitive, nullspace_basis};
use crate::ratio::FormalLog;
use crate::subset::display_order;

/// A primitive integer vector spanning an extreme ray, indexed by subset
/// encoding.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ray {
    n: usize,
    entries: Vec<BigInt>,
}

impl Ray {
    pub(crate) fn from_parts(n: usize, entries: Vec<BigInt>) -> Ray {
        Ray { n, entries }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn to_formal_log(&self) -> FormalLog {
        FormalLog::from_integers(self.n, &self.entries).expect("rays satisfy the equalities")
    }

    /// Entries in display order, the key used for sorting ray lists.
    pub fn ordered_entries(&self) -> Vec<BigInt> {
        display_order(self.n)
            .into_iter()
            .map(|s| self.entries[s.bits() as usize].clone())
            .collect()
    }
}

/// Integer basis of the equality solution space.
pub(crate) struct Frame {
    pub(crate) basis: Vec<Vec<BigInt>>,
}

impl Frame {
    pub(crate) fn new(sys: &ConstraintSystem) -> Frame {
        let n = sys.ground_size();
        let order = display_order(n);
        // reorder columns so the pivots land on the smallest sets
        let permuted: Vec<Vec<BigRational>> = sys
            .equalities()
            .iter()
            .map(|row| {
                order
                    .iter()
                    .map(|s| row[s.bits() as usize].clone())
                    .collect()
            })
            .collect();
        let basis = nullspace_basis(&permuted, 1 << n)
            .into_iter()
            .map(|v| {
                let mut full = vec![BigInt::zero(); 1 << n];
                for (s, x) in order.iter().zip(v) {
                    full[s.bits() as usize] = x;
                }
                full
            })
            .collect();
        Frame { basis }
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn reduce_row(&self, c: &[BigRational]) -> Vec<BigInt> {
        let coords: Vec<BigRational> = self
            .basis
            .iter()
            .map(|b| {
                c.iter()
                    .zip(b)
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(x, y)| x * BigRational::from_integer(y.clone()))
                    .sum()
            })
            .collect();
        clear_denominators(&coords)
    }

    pub(crate) fn lift(&self, x: &[BigInt]) -> Vec<BigInt> {
        let len = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![BigInt::zero(); len];
        for (b, xk) in self.basis.iter().zip(x) {
            if xk.is_zero() {
                continue;
            }
            for (o, bi) in out.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *o += xk * bi;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet {
    words: Vec<u64>,
}

impl RowSet {
    fn new(rows: usize) -> Self {
        RowSet {
            words: vec![0; rows.div_ceil(64)],
        }
    }

    fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    fn intersection(&self, other: &RowSet) -> RowSet {
        RowSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| k * 64 + b)
        })
    }
}

struct WorkingRay {
    coords: Vec<BigInt>,
    zeros: RowSet,
}

fn rank_of_rows(rows: &[Vec<BigInt>], picked: impl Iterator<Item = usize>) -> usize {
    bareiss_rank(picked.map(|k| rows[k].clone()).collect())
}

/// All extreme rays of the cone `{x : equalities, cᵀx ≥ 0}`, each once,
/// sorted by entries in display order.
pub fn extreme_rays(sys: &ConstraintSystem) -> Result<Vec<Ray>, ConeError> {
    let n = sys.ground_size();
    let frame = Frame::new(sys);
    let d = frame.dim();
    let rows: Vec<Vec<BigInt>> = sys
        .inequalities()
        .iter()
        .map(|c| frame.reduce_row(&c.vector))
        .collect();
    let m = rows.len();

    if d == 0 {
        return Ok(Vec::new());
    }
    if bareiss_rank(rows.clone()) < d {
        let as_rat: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let dir = nullspace_basis(&as_rat, d).remove(0);
        let direction = FormalLog::from_integers(n, &frame.lift(&dir)).ok_or_else(|| {
            ConeError::Internal("lineality direction off the equality space".into())
        })?;
        return Err(ConeError::NotPointed { direction });
    }

    // initial simplicial cone from the first d independent rows
    let mut basis_rows: Vec<usize> = Vec::new();
    for k in 0..m {
        if rank_of_rows(&rows, basis_rows.iter().copied().chain([k])) > basis_rows.len() {
            basis_rows.push(k);
            if basis_rows.len() == d {
                break;
            }
        }
    }
    let mut rays: Vec<WorkingRay> = Vec::with_capacity(d);
    for (j, &row_j) in basis_rows.iter().enumerate() {
        let others: Vec<Vec<BigRational>> = basis_rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &k)| {
                rows[k]
                    .iter()
                    .cloned()
                    .map(BigRational::from_integer)
                    .collect()
            })
            .collect();
        let mut coords = if others.is_empty() {
            vec![BigInt::from(1)]
        } else {
            nullspace_basis(&others, d).remove(0)
        };
        if dot_int(&rows[row_j], &coords).is_negative() {
            coords.iter_mut().for_each(|x| *x = -&*x);
        }
        let mut zeros = RowSet::new(m);
        for (i, &k) in basis_rows.iter().enumerate() {
            if i != j {
                zeros.insert(k);
            }
        }
        rays.push(WorkingRay { coords, zeros });
    }

    let mut inserted = vec![false; m];
    for &k in &basis_rows {
        inserted[k] = true;
    }
    for k in 0..m {
        if inserted[k] {
            continue;
        }
        let row = &rows[k];
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();

        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .flat_map(|&p| neg.iter().map(move |&q| (p, q)))
            .collect();
        let created: Vec<WorkingRay> = pairs
            .par_iter()
            .filter_map(|&(p, q)| {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() + 2 < d || rank_of_rows(&rows, common.iter()) != d - 2 {
                    return None;
                }
                let (vp, vq) = (&values[p], &values[q]);
                let mut coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xq, xp)| vp * xq - vq * xp)
                    .collect();
                make_primitive(&mut coords);
                let mut zeros = common;
                zeros.insert(k);
                Some(WorkingRay { coords, zeros })
            })
            .collect();

        let mut next: Vec<WorkingRay> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.insert(k);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        inserted[k] = true;
    }

    let mut out: Vec<Ray> = rays
        .into_iter()
        .map(|r| {
            if rank_of_rows(&rows, r.zeros.iter()) != d - 1 {
                return Err(ConeError::Internal(
                    "ray failed the extremality check".into(),
                ));
            }
            let mut entries = frame.lift(&r.coords);
            make_primitive(&mut entries);
            Ok(Ray { n, entries })
        })
        .collect::<Result<_, _>>()?;
    out.sort_by_cached_key(|r| r.ordered_entries());
    out.dedup();
    for r in &out {
        if !sys.contains(&r.to_formal_log()) {
            return Err(ConeError::Internal("ray violates its system".into()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{build_d_system, build_e_system, Constraint};
    use crate::ratio::{koteljanskii_log, parse_ratio};
    use crate::subset::IndexSet;

    #[test]
    fn e3_has_six_koteljanskii_rays() {
        let rays = extreme_rays(&build_e_system(3).unwrap()).unwrap();
        assert_eq!(rays.len(), 6);
        let set = |ix: &[usize]| IndexSet::from_indices(ix.iter().copied());
        let expected = [
            koteljanskii_log(set(&[1]), set(&[2]), 3),
            koteljanskii_log(set(&[1]), set(&[3]), 3),
            koteljanskii_log(set(&[2]), set(&[3]), 3),
            koteljanskii_log(set(&[1, 2]), set(&[1, 3]), 3),
            koteljanskii_log(set(&[1, 2]), set(&[2, 3]), 3),
            koteljanskii_log(set(&[1, 3]), set(&[2, 3]), 3),
        ];
        let got: Vec<FormalLog> = rays.iter().map(Ray::to_formal_log).collect();
        for e in &expected {
            assert!(got.contains(e), "missing {e}");
        }
    }

    #[test]
    fn d3_equals_e3() {
        let d = extreme_rays(&build_d_system(3).unwrap()).unwrap();
        let e = extreme_rays(&build_e_system(3).unwrap()).unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn non_pointed_cone_reports_direction() {
        // only the Hadamard-type row: far from pointed
        let sys = build_e_system(3).unwrap();
        let one = ConstraintSystem::homogeneous(3, vec![sys.inequalities()[0].clone()]);
        match extreme_rays(&one) {
            Err(ConeError::NotPointed { direction }) => {
                assert!(direction.is_homogeneous());
                assert!(!direction.is_zero());
                assert!(direction.dot(&one.inequalities()[0].vector).is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ray_order_is_insertion_independent() {
        let sys = build_e_system(3).unwrap();
        let base = extreme_rays(&sys).unwrap();
        let reversed: Vec<usize> = (0..sys.inequalities().len()).rev().collect();
        assert_eq!(extreme_rays(&sys.reordered(&reversed)).unwrap(), base);
    }

    #[test]
    fn single_inequality_in_one_dimension() {
        // n = 2: homogeneous space is spanned by the Hadamard log
        let v = parse_ratio("{1,2}{} / {1}{2}", Some(2))
            .unwrap()
            .formal_log();
        let row = Constraint {
            label: "h".into(),
            vector: v.entries().to_vec(),
        };
        let rays = extreme_rays(&ConstraintSystem::homogeneous(2, vec![row])).unwrap();
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].to_formal_log(), v);
    }
}
