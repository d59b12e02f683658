//! Polynomial matrix families `P(e)`, exact principal minors of `PᵀP` as
//! polynomials, and asymptotic nullity types.

mod parse;
mod poly;

use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::nullity::{counts_to_rationals, NullityError, NullityType, RationalMatrix};
use crate::ratio::FormalLog;
use crate::subset::{all_subsets, IndexSet};

pub use parse::{parse_poly_matrix, parse_polynomial, PolyParseError};
pub use poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsnError {
    #[error("principal minor on {0} is identically zero; det P must not vanish")]
    ZeroMinor(IndexSet),
    #[error("principal minor on {subset} has odd lowest degree {degree}")]
    OddDegree { subset: IndexSet, degree: usize },
    #[error("principal minor on {0} has a non-positive lowest coefficient")]
    NonPositiveLeading(IndexSet),
    #[error("ground size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

/// Square matrix of polynomials, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// `None` unless every row has `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        PolyMatrix::scalar(n, Polynomial::from(1))
    }

    /// `p · I`
    pub fn scalar(n: usize, p: Polynomial) -> Self {
        let mut entries = vec![Polynomial::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = p.clone();
        }
        PolyMatrix { n, entries }
    }

    /// `B + e·C` for square rational `B`, `C` of the same size.
    pub fn linear(b: &RationalMatrix, c: &RationalMatrix) -> Option<Self> {
        let n = b.rows();
        if b.cols() != n || c.rows() != n || c.cols() != n {
            return None;
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(Polynomial::new(vec![
                    b.get(i, j).clone(),
                    c.get(i, j).clone(),
                ]));
            }
        }
        Some(PolyMatrix { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at zero-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn eval_f64(&self, e: f64) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).eval_f64(e))
    }

    fn principal(&self, s: IndexSet) -> Vec<Vec<Polynomial>> {
        let idx: Vec<usize> = s.iter().map(|i| i - 1).collect();
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

/// `PᵀP`, with entry `(i, j) = Σ_k P(k, i)·P(k, j)`.
pub fn gram(p: &PolyMatrix) -> PolyMatrix {
    let n = p.n;
    let mut entries = vec![Polynomial::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = Polynomial::zero();
            for k in 0..n {
                acc = &acc + &(p.get(k, i) * p.get(k, j));
            }
            entries[j * n + i] = acc.clone();
            entries[i * n + j] = acc;
        }
    }
    PolyMatrix { n, entries }
}

/// Fraction-free elimination over `Q[e]`; every division is exact.
fn det_bareiss(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let m = a.len();
    if m == 0 {
        return Polynomial::from(1);
    }
    let mut prev = Polynomial::from(1);
    let mut negate = false;
    for k in 0..m - 1 {
        let Some(p) = (k..m).find(|&i| !a[i][k].is_zero()) else {
            return Polynomial::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[m - 1][m - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Laplace expansion along the first remaining row.
fn det_cofactor(a: &[Vec<Polynomial>]) -> Polynomial {
    fn go(a: &[Vec<Polynomial>], row: usize, cols: &mut Vec<usize>) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::from(1);
        }
        let mut acc = Polynomial::zero();
        for k in 0..cols.len() {
            let c = cols.remove(k);
            if !a[row][c].is_zero() {
                let term = &a[row][c] * &go(a, row + 1, cols);
                acc = if k % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            cols.insert(k, c);
        }
        acc
    }
    go(a, 0, &mut (0..a.len()).collect())
}

/// Determinant of `A[S]` as a polynomial in `e`. Sizes up to five are
/// computed both by elimination and by cofactor expansion, and the two must
/// agree.
pub fn principal_minor_poly(a: &PolyMatrix, s: IndexSet) -> Polynomial {
    let sub = a.principal(s);
    let det = det_bareiss(sub.clone());
    if sub.len() <= 5 {
        assert_eq!(
            det,
            det_cofactor(&sub),
            "determinant cross-check failed on {s}"
        );
    }
    det
}

/// Half-degrees `d_S` of the dominating terms of the principal minors of
/// `PᵀP`, indexed by subset encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AsnVector {
    n: usize,
    entries: Vec<u32>,
}

impl AsnVector {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, s: IndexSet) -> u32 {
        self.entries[s.bits() as usize]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        counts_to_rationals(&self.entries)
    }

    /// The vector as a nullity type, if it satisfies the matroid axioms.
    pub fn as_nullity_type(&self) -> Result<NullityType, NullityError> {
        NullityType::new(self.n, self.entries.clone())
    }
}

/// Minor polynomials of `PᵀP` for every subset, in encoding order.
pub fn gram_minors(p: &PolyMatrix) -> Vec<Polynomial> {
    let a = gram(p);
    let subsets: Vec<IndexSet> = all_subsets(p.n).collect();
    subsets
        .par_iter()
        .map(|&s| principal_minor_poly(&a, s))
        .collect()
}

pub fn asn(p: &PolyMatrix) -> Result<AsnVector, AsnError> {
    let minors = gram_minors(p);
    let mut entries = Vec::with_capacity(minors.len());
    for (s, m) in all_subsets(p.n).zip(&minors) {
        let (degree, c) = m.lowest_term().ok_or(AsnError::ZeroMinor(s))?;
        if degree % 2 == 1 {
            return Err(AsnError::OddDegree { subset: s, degree });
        }
        if !c.is_positive() {
            return Err(AsnError::NonPositiveLeading(s));
        }
        entries.push((degree / 2) as u32);
    }
    Ok(AsnVector { n: p.n, entries })
}

pub fn asn_inner_product(v: &FormalLog, a: &AsnVector) -> Result<BigRational, AsnError> {
    if v.ground_size() != a.n {
        return Err(AsnError::SizeMismatch {
            expected: a.n,
            found: v.ground_size(),
        });
    }
    Ok(v.dot_counts(&a.entries))
}

/// Lowest coefficients `C_S` of the Gram minors as floats, by encoding.
pub fn dominant_coefficients(p: &PolyMatrix) -> Result<Vec<f64>, AsnError> {
    all_subsets(p.n)
        .zip(gram_minors(p))
        .map(|(s, m)| {
            m.lowest_term()
                .map(|(_, c)| c.to_f64().unwrap_or(f64::NAN))
                .ok_or(AsnError::ZeroMinor(s))
        })
        .collect()
}
