//! Membership in the cone generated by Koteljanskii logarithms, decided by an
//! exact phase-one simplex.
//!
//! Both the target and the generators are homogeneous, so the problem is
//! posed on the coordinates of sets with at least two elements, where the
//! homogeneous space is parametrized bijectively. An infeasible phase one
//! yields a Farkas vector from the final simplex multipliers.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{reduced_sets, ConeError};
use crate::ratio::{koteljanskii_log, FormalLog};
use crate::subset::{all_subsets, IndexSet};

/// A generator `log((S∪T)(S∩T) / (S·T))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGenerator {
    pub s: IndexSet,
    pub t: IndexSet,
    pub log: FormalLog,
}

/// Every nonzero Koteljanskii logarithm on `{1..n}`, one per distinct
/// vector, ordered by the encodings of `(S, T)` with `S < T`.
pub fn koteljanskii_generators(n: usize) -> Vec<KGenerator> {
    let mut out: Vec<KGenerator> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in all_subsets(n) {
        for t in all_subsets(n).filter(|t| t.bits() > s.bits()) {
            let log = koteljanskii_log(s, t, n);
            if log.is_zero() || !seen.insert(log.clone()) {
                continue;
            }
            out.push(KGenerator { s, t, log });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KCertificate {
    /// `v = Σ coefficient · log(S, T)` with positive coefficients.
    Member {
        coefficients: Vec<(IndexSet, IndexSet, BigRational)>,
    },
    /// `hᵀg ≥ 0` for every generator `g`, while `hᵀv = value < 0`.
    NonMember {
        hyperplane: Vec<BigRational>,
        value: BigRational,
    },
}

impl KCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self, KCertificate::Member { .. })
    }

    /// Re-checks the certificate against `v` from scratch.
    pub fn verify(&self, v: &FormalLog) -> bool {
        let n = v.ground_size();
        match self {
            KCertificate::Member { coefficients } => {
                let mut acc = FormalLog::zero(n);
                for (s, t, c) in coefficients {
                    if !c.is_positive() {
                        return false;
                    }
                    acc = &acc + &(&koteljanskii_log(*s, *t, n) * c);
                }
                acc == *v
            }
            KCertificate::NonMember { hyperplane, value } => {
                value.is_negative()
                    && v.dot(hyperplane) == *value
                    && koteljanskii_generators(n)
                        .iter()
                        .all(|g| !g.log.dot(hyperplane).is_negative())
            }
        }
    }
}

/// Dense phase-one tableau: rows are constraints, columns are structural
/// variables, then artificials, then the right-hand side.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<BigRational>| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    /// Bland's rule: smallest improving column, ties in the ratio test broken
    /// by smallest basic variable.
    fn run(&mut self) {
        let rhs = self.width - 1;
        while let Some(c) = (0..rhs).find(|&j| self.cost[j].is_negative()) {
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let (r, _) = best.expect("phase one is bounded below by zero");
            self.pivot(r, c);
        }
    }
}

/// Decides whether `v` is a nonnegative combination of Koteljanskii
/// logarithms, returning either the coefficients or a separating hyperplane.
pub fn koteljanskii_cone_membership(v: &FormalLog) -> Result<KCertificate, ConeError> {
    if !v.is_homogeneous() {
        return Err(ConeError::NotHomogeneous);
    }
    let n = v.ground_size();
    let coords = reduced_sets(n);
    let gens = koteljanskii_generators(n);
    let m = coords.len();
    let ncols = gens.len();
    let width = ncols + m + 1;

    let signs: Vec<bool> = coords.iter().map(|&s| v.entry(s).is_negative()).collect();
    let mut rows = Vec::with_capacity(m);
    for (i, &s) in coords.iter().enumerate() {
        let flip = |x: BigRational| if signs[i] { -x } else { x };
        let mut row = vec![BigRational::zero(); width];
        for (j, g) in gens.iter().enumerate() {
            row[j] = flip(g.log.entry(s).clone());
        }
        row[ncols + i] = BigRational::one();
        row[width - 1] = flip(v.entry(s).clone());
        rows.push(row);
    }
    // reduced costs of minimizing the sum of artificials from the identity basis
    let mut cost = vec![BigRational::zero(); width];
    for row in &rows {
        for j in 0..ncols {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut tab = Tableau {
        rows,
        cost,
        basis: (ncols..ncols + m).collect(),
        width,
    };
    tab.run();

    let objective = -tab.cost[width - 1].clone();
    let cert = if objective.is_zero() {
        let mut coefficients = Vec::new();
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < ncols && tab.rows[i][width - 1].is_positive() {
                coefficients.push((gens[b].s, gens[b].t, tab.rows[i][width - 1].clone()));
            }
        }
        coefficients.sort_by_key(|(s, t, _)| (s.bits(), t.bits()));
        KCertificate::Member { coefficients }
    } else {
        // simplex multipliers y_i = 1 − (reduced cost of artificial i)
        let mut hyperplane = vec![BigRational::zero(); 1 << n];
        for (i, &s) in coords.iter().enumerate() {
            let y = BigRational::one() - &tab.cost[ncols + i];
            hyperplane[s.bits() as usize] = if signs[i] { y } else { -y };
        }
        let value = v.dot(&hyperplane);
        KCertificate::NonMember { hyperplane, value }
    };
    if !cert.verify(v) {
        return Err(ConeError::Internal(
            "Koteljanskii certificate failed verification".into(),
        ));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::parse_ratio;

    fn log_of(text: &str, n: usize) -> FormalLog {
        parse_ratio(text, Some(n)).unwrap().formal_log()
    }

    const R1: &str = "{1,2,4}{1,3,4}{2,3}{1}{4} / {1,2}{1,3}{1,4}{2,4}{3,4}";

    #[test]
    fn generator_counts() {
        assert_eq!(koteljanskii_generators(2).len(), 1);
        for g in koteljanskii_generators(4) {
            assert!(g.log.is_homogeneous());
        }
    }

    #[test]
    fn koteljanskii_ratios_are_members() {
        let v = log_of("{1,2,3}{1} / {1,2}{1,3}", 3);
        let cert = koteljanskii_cone_membership(&v).unwrap();
        assert!(cert.is_member());
        // a positive combination
        let w = &(&v * &BigRational::new(5.into(), 2.into())) + &log_of("{2,3}{} / {2}{3}", 3);
        assert!(koteljanskii_cone_membership(&w).unwrap().is_member());
    }

    #[test]
    fn inverse_ratio_is_separated() {
        let v = log_of("{1}{2} / {1,2}{}", 2);
        match koteljanskii_cone_membership(&v).unwrap() {
            KCertificate::NonMember { value, .. } => assert!(value.is_negative()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn r1_is_not_koteljanskii() {
        let cert = koteljanskii_cone_membership(&log_of(R1, 4)).unwrap();
        assert!(!cert.is_member());
        assert!(cert.verify(&log_of(R1, 4)));
    }

    #[test]
    fn zero_vector_is_member() {
        let cert = koteljanskii_cone_membership(&FormalLog::zero(3)).unwrap();
        assert_eq!(
            cert,
            KCertificate::Member {
                coefficients: vec![]
            }
        );
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert_eq!(
            koteljanskii_cone_membership(&log_of("{1,2} / {1}", 2)),
            Err(ConeError::NotHomogeneous)
        );
    }
}
