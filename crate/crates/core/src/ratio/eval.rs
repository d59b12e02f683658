use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::FormalLog;
use crate::subset::IndexSet;

/// Pivots at or below this are treated as a failed factorization.
const PIVOT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("expected a {expected}x{expected} matrix, found {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("principal submatrix on {subset} is not positive definite (pivot {pivot:e})")]
    NotPositiveDefinite { subset: IndexSet, pivot: f64 },
}

/// `log det A[S]` by Cholesky factorization of the principal submatrix;
/// the empty set contributes 0.
pub fn logdet_principal(a: &DMatrix<f64>, s: IndexSet) -> Result<f64, EvalError> {
    let idx: Vec<usize> = s.iter().map(|i| i - 1).collect();
    let m = idx.len();
    let mut l = vec![0.0f64; m * m];
    let mut logdet = 0.0;
    for k in 0..m {
        for j in 0..=k {
            let mut acc = a[(idx[k], idx[j])];
            for p in 0..j {
                acc -= l[k * m + p] * l[j * m + p];
            }
            if j == k {
                if acc.is_nan() || acc <= PIVOT_FLOOR {
                    return Err(EvalError::NotPositiveDefinite {
                        subset: s,
                        pivot: acc,
                    });
                }
                logdet += acc.ln();
                l[k * m + k] = acc.sqrt();
            } else {
                l[k * m + j] = acc / l[j * m + j];
            }
        }
    }
    Ok(logdet)
}

fn check_square(v: &FormalLog, rows: usize, cols: usize) -> Result<(), EvalError> {
    let n = v.ground_size();
    if rows != n || cols != n {
        return Err(EvalError::DimensionMismatch {
            expected: n,
            rows,
            cols,
        });
    }
    Ok(())
}

/// `Σ_S v_S · log det A[S]`, the logarithm of the ratio evaluated at `A`.
pub fn evaluate_log_ratio(v: &FormalLog, a: &DMatrix<f64>) -> Result<f64, EvalError> {
    check_square(v, a.nrows(), a.ncols())?;
    let n = a.nrows();
    for i in 0..n {
        for j in 0..i {
            let (x, y) = (a[(i, j)], a[(j, i)]);
            if (x - y).abs() > 1e-10 * x.abs().max(y.abs()).max(1.0) {
                return Err(EvalError::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut total = 0.0;
    for (s, x) in v.support() {
        if s.is_empty() {
            continue;
        }
        let w = x.to_f64().expect("finite exponent");
        total += w * logdet_principal(a, s)?;
    }
    Ok(total)
}

/// Same as [`evaluate_log_ratio`] for `A = FᵀF`, computing each
/// `log det A[S]` from the QR factorization of the columns `S` of `F`.
///
/// This avoids forming `FᵀF`, whose condition number is the square of
/// that of `F`.
pub fn evaluate_log_ratio_gram(v: &FormalLog, f: &DMatrix<f64>) -> Result<f64, EvalError> {
    let n = v.ground_size();
    if f.ncols() != n || f.nrows() < n {
        return Err(EvalError::DimensionMismatch {
            expected: n,
            rows: f.nrows(),
            cols: f.ncols(),
        });
    }
    let mut total = 0.0;
    for (s, x) in v.support() {
        if s.is_empty() {
            continue;
        }
        let cols: Vec<usize> = s.iter().map(|i| i - 1).collect();
        let r = f.select_columns(cols.iter()).qr().r();
        let mut logdet = 0.0;
        for k in 0..cols.len() {
            let d = r[(k, k)] * r[(k, k)];
            if d.is_nan() || d <= PIVOT_FLOOR {
                return Err(EvalError::NotPositiveDefinite {
                    subset: s,
                    pivot: d,
                });
            }
            logdet += d.ln();
        }
        total += x.to_f64().expect("finite exponent") * logdet;
    }
    Ok(total)
}
