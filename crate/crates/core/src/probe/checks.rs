//! Inequalities and identities checked on individual matrices.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::ProbeError;
use crate::known::{self, FACTORIZATIONS};
use crate::ratio::{evaluate_log_ratio, logdet_principal, FormalLog};
use crate::subset::IndexSet;

pub const CHECK_TOLERANCE: f64 = 1e-9;

fn inverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>, ProbeError> {
    if !a.is_square() {
        return Err(ProbeError::Dimension {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    a.clone()
        .cholesky()
        .map(|c| c.inverse())
        .ok_or(ProbeError::Inversion)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiedlerReport {
    /// `Σ_j √(a_jj b_jj) − 2√(a_ii b_ii) − (n − 2)` for each `i`, with
    /// `B = A⁻¹`.
    pub residuals: Vec<f64>,
    pub holds: bool,
}

impl FiedlerReport {
    pub fn min_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn fiedler_check(a: &DMatrix<f64>, tolerance: f64) -> Result<FiedlerReport, ProbeError> {
    let n = a.nrows();
    if n < 2 {
        return Err(ProbeError::Dimension {
            expected: 2,
            found: n,
        });
    }
    let b = inverse(a)?;
    let roots: Vec<f64> = (0..n).map(|j| (a[(j, j)] * b[(j, j)]).sqrt()).collect();
    let total: f64 = roots.iter().sum();
    let residuals: Vec<f64> = roots
        .iter()
        .map(|r| total - 2.0 * r - (n as f64 - 2.0))
        .collect();
    let holds = residuals.iter().all(|&r| r >= -tolerance);
    Ok(FiedlerReport { residuals, holds })
}

/// `log({i}{N∖i} / {j}{N∖j})`
fn pair_log(i: usize, j: usize, n: usize) -> FormalLog {
    let full = IndexSet::full(n);
    let mut entries = vec![BigRational::from_integer(BigInt::from(0)); 1 << n];
    let one = BigRational::from_integer(BigInt::from(1));
    for (k, sign) in [(i, 1), (j, -1)] {
        let w = &one * BigRational::from_integer(BigInt::from(sign));
        entries[IndexSet::singleton(k).bits() as usize] += &w;
        entries[full.without(k).bits() as usize] += &w;
    }
    FormalLog::normalized(n, entries)
}

/// `min_{j ≠ i} ({i}{N∖i} / {j}{N∖j})(A)`, which must not exceed `(n − 1)²`.
pub fn corollary_check(a: &DMatrix<f64>, i: usize) -> Result<f64, ProbeError> {
    let n = a.nrows();
    if n < 3 {
        return Err(ProbeError::Dimension {
            expected: 3,
            found: n,
        });
    }
    if !(1..=n).contains(&i) {
        return Err(ProbeError::Index { index: i, n });
    }
    let mut best = f64::INFINITY;
    for j in (1..=n).filter(|&j| j != i) {
        best = best.min(evaluate_log_ratio(&pair_log(i, j, n), a)?.exp());
    }
    let bound = ((n - 1) * (n - 1)) as f64;
    if best > bound + CHECK_TOLERANCE {
        return Err(ProbeError::CorollaryViolated {
            index: i,
            value: best,
            bound,
        });
    }
    Ok(best)
}

/// `det A[S] = det A · det A⁻¹[N∖S]` to relative `tolerance`.
pub fn jacobi_check(a: &DMatrix<f64>, s: IndexSet, tolerance: f64) -> Result<bool, ProbeError> {
    let n = a.nrows();
    let b = inverse(a)?;
    let lhs = logdet_principal(a, s)?;
    let rhs = logdet_principal(a, IndexSet::full(n))? + logdet_principal(&b, s.complement(n))?;
    Ok((rhs - lhs).exp_m1().abs() <= tolerance)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Every factor but the last is a Koteljanskii logarithm.
    pub factors_koteljanskii: bool,
}

pub fn decomposition_identities() -> Vec<IdentityCheck> {
    FACTORIZATIONS
        .iter()
        .map(|(name, ratio, factors)| {
            let logs: Vec<FormalLog> = factors.iter().map(|f| known::log_of(f, 4)).collect();
            let sum = logs.iter().fold(FormalLog::zero(4), |acc, x| &acc + x);
            IdentityCheck {
                name,
                holds: sum == known::log_of(ratio, 4),
                factors_koteljanskii: logs[..logs.len() - 1]
                    .iter()
                    .all(FormalLog::is_koteljanskii_ray),
            }
        })
        .collect()
}

/// Fails on the first factorization that does not hold exactly.
pub fn decomposition_check() -> Result<(), ProbeError> {
    for c in decomposition_identities() {
        if !(c.holds && c.factors_koteljanskii) {
            return Err(ProbeError::IdentityFailed(c.name.to_string()));
        }
    }
    Ok(())
}
