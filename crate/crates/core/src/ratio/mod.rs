//! Ratios of products of principal minors and their formal logarithms.
//!
//! A ratio is recorded by its net exponent on every subset of `{1..n}`. The
//! exponent on the empty set is always whatever makes the total zero, so two
//! ratios that differ only by a constant factor of `det A[{}] = 1` share a
//! formal logarithm.

mod eval;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::subset::{all_subsets, display_order, IndexSet, Permutation, MAX_GROUND};

pub use eval::{evaluate_log_ratio, evaluate_log_ratio_gram, logdet_principal, EvalError};
pub use parse::parse_ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("exponent at position {position} must be positive")]
    NonPositiveExponent { position: usize },
    #[error("index {index} at position {position} is outside 1..={n}")]
    IndexOutOfRange {
        index: usize,
        n: usize,
        position: usize,
    },
    #[error("ground size {0} is outside 1..=16")]
    GroundSize(usize),
}

/// One factor `det A[set]^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub set: IndexSet,
    pub exponent: BigRational,
}

/// A ratio as written: numerator and denominator factor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioSpec {
    pub ground_size: usize,
    pub numerator: Vec<Term>,
    pub denominator: Vec<Term>,
}

impl RatioSpec {
    pub fn parse(text: &str, n: usize) -> Result<Self, RatioError> {
        parse_ratio(text, Some(n))
    }

    pub fn formal_log(&self) -> FormalLog {
        formal_log(self)
    }
}

/// The `n + 1` vectors spanning the orthogonal complement of the homogeneous
/// formal logarithms: the all-ones vector `e` and, for each index `i`, the
/// indicator of the subsets containing `i`.
pub fn homogeneity_vectors(n: usize) -> Vec<Vec<BigRational>> {
    let one = BigRational::one;
    let mut out = vec![vec![one(); 1 << n]];
    for i in 1..=n {
        out.push(
            all_subsets(n)
                .map(|s| {
                    if s.contains(i) {
                        one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        );
    }
    out
}

/// Net exponent per subset, indexed by subset encoding, summing to zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalLog {
    n: usize,
    entries: Vec<BigRational>,
}

/// Formal logarithm of a written ratio.
pub fn formal_log(r: &RatioSpec) -> FormalLog {
    let n = r.ground_size;
    let mut entries = vec![BigRational::zero(); 1 << n];
    for t in &r.numerator {
        entries[t.set.bits() as usize] += &t.exponent;
    }
    for t in &r.denominator {
        entries[t.set.bits() as usize] -= &t.exponent;
    }
    FormalLog::normalized(n, entries)
}

/// Formal logarithm of the Koteljanskii ratio `(S∪T)(S∩T) / (S·T)`.
///
/// Comparable `S`, `T` give the zero vector.
pub fn koteljanskii_log(s: IndexSet, t: IndexSet, n: usize) -> FormalLog {
    let mut v = FormalLog::zero(n);
    if s.is_subset_of(t) || t.is_subset_of(s) {
        return v;
    }
    let one = BigRational::one();
    v.entries[s.union(t).bits() as usize] += &one;
    v.entries[s.intersection(t).bits() as usize] += &one;
    v.entries[s.bits() as usize] -= &one;
    v.entries[t.bits() as usize] -= &one;
    v
}

impl FormalLog {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground size {n} exceeds {MAX_GROUND}");
        FormalLog {
            n,
            entries: vec![BigRational::zero(); 1 << n],
        }
    }

    /// Takes entries indexed by subset encoding and overwrites the empty-set
    /// entry so the total is zero.
    pub fn normalized(n: usize, mut entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), 1 << n, "expected 2^{n} entries");
        let rest: BigRational = entries[1..].iter().sum();
        entries[0] = -rest;
        FormalLog { n, entries }
    }

    /// Builds from entries that must already sum to zero.
    pub fn from_entries(n: usize, entries: Vec<BigRational>) -> Option<Self> {
        if entries.len() != 1 << n || !entries.iter().sum::<BigRational>().is_zero() {
            return None;
        }
        Some(FormalLog { n, entries })
    }

    pub fn from_integers(n: usize, entries: &[BigInt]) -> Option<Self> {
        Self::from_entries(
            n,
            entries
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, s: IndexSet) -> &BigRational {
        &self.entries[s.bits() as usize]
    }

    /// Entries indexed by subset encoding.
    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Nonzero entries in encoding order.
    pub fn support(&self) -> impl Iterator<Item = (IndexSet, &BigRational)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (IndexSet::from_bits(k as u32), x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact inner product with a subset-indexed vector.
    pub fn dot(&self, other: &[BigRational]) -> BigRational {
        crate::linalg::dot_rat(&self.entries, other)
    }

    /// Inner product with an integer subset-indexed vector (nullity types,
    /// rank types, asymptotic nullity types).
    pub fn dot_counts(&self, counts: &[u32]) -> BigRational {
        self.entries
            .iter()
            .zip(counts)
            .filter(|(_, &c)| c != 0)
            .map(|(x, &c)| x * BigRational::from_integer(c.into()))
            .sum()
    }

    /// Orthogonal to `e` and to every index-membership indicator.
    pub fn is_homogeneous(&self) -> bool {
        if !self.entries.iter().sum::<BigRational>().is_zero() {
            return false;
        }
        (1..=self.n).all(|i| {
            all_subsets(self.n)
                .filter(|s| s.contains(i))
                .map(|s| self.entry(s))
                .sum::<BigRational>()
                .is_zero()
        })
    }

    /// Output entry at `σ(S)` is the input entry at `S`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> FormalLog {
        assert_eq!(sigma.size(), self.n, "permutation size mismatch");
        let mut out = vec![BigRational::zero(); self.entries.len()];
        for (s, x) in all_subsets(self.n).zip(&self.entries) {
            out[sigma.apply_set(s).bits() as usize] = x.clone();
        }
        FormalLog {
            n: self.n,
            entries: out,
        }
    }

    /// Output entry at `S^c` is the input entry at `S`.
    pub fn apply_complement(&self) -> FormalLog {
        let full = (1usize << self.n) - 1;
        let entries = (0..self.entries.len())
            .map(|k| self.entries[full ^ k].clone())
            .collect();
        FormalLog { n: self.n, entries }
    }

    /// True iff this is a positive multiple of the log of a Koteljanskii ratio
    /// with `|S| = |T| = |S∩T| + 1`.
    pub fn is_koteljanskii_ray(&self) -> bool {
        let support: Vec<(IndexSet, &BigRational)> = self.support().collect();
        if support.len() != 4 {
            return false;
        }
        let scale = support
            .iter()
            .find(|(_, x)| x.is_positive())
            .map(|(_, x)| (*x).clone());
        let Some(scale) = scale else {
            return false;
        };
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (s, x) in &support {
            if **x == scale {
                pos.push(*s);
            } else if **x == -scale.clone() {
                neg.push(*s);
            } else {
                return false;
            }
        }
        if pos.len() != 2 || neg.len() != 2 {
            return false;
        }
        let (s, t) = (neg[0], neg[1]);
        let (cup, cap) = (s.union(t), s.intersection(t));
        let pos_ok = (pos[0] == cup && pos[1] == cap) || (pos[1] == cup && pos[0] == cap);
        pos_ok && s.len() == t.len() && s.len() == cap.len() + 1
    }

    /// Deletes index `i` from every set, merging `S` and `S∪{i}`, and
    /// relabels indices above `i` downward.
    pub fn delete_index(&self, i: usize) -> FormalLog {
        assert!(
            (1..=self.n).contains(&i),
            "index {i} outside 1..={}",
            self.n
        );
        let m = self.n - 1;
        let entries = all_subsets(m)
            .map(|s| {
                let lifted = s.insert_gap(i);
                self.entry(lifted) + self.entry(lifted.with(i))
            })
            .collect();
        FormalLog { n: m, entries }
    }

    /// A written form with numerator and denominator, each set appearing at
    /// most once. The zero vector is written `{} / {}`.
    pub fn to_ratio_spec(&self) -> RatioSpec {
        let mut numerator = Vec::new();
        let mut denominator = Vec::new();
        for s in display_order(self.n) {
            let x = self.entry(s);
            if x.is_positive() {
                numerator.push(Term {
                    set: s,
                    exponent: x.clone(),
                });
            } else if x.is_negative() {
                denominator.push(Term {
                    set: s,
                    exponent: -x.clone(),
                });
            }
        }
        if numerator.is_empty() {
            let empty = Term {
                set: IndexSet::EMPTY,
                exponent: BigRational::one(),
            };
            numerator.push(empty.clone());
            denominator.push(empty);
        }
        RatioSpec {
            ground_size: self.n,
            numerator,
            denominator,
        }
    }

    /// Entries in display order (by size, then encoding).
    pub fn ordered_entries(&self) -> Vec<BigRational> {
        display_order(self.n)
            .into_iter()
            .map(|s| self.entry(s).clone())
            .collect()
    }
}

impl fmt::Display for RatioSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn product(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
            for t in terms {
                write!(f, "{}", t.set)?;
                if !t.exponent.is_one() {
                    write!(f, "^{}", t.exponent)?;
                }
            }
            Ok(())
        }
        product(f, &self.numerator)?;
        f.write_str(" / ")?;
        product(f, &self.denominator)
    }
}

impl fmt::Display for FormalLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratio_spec())
    }
}

impl fmt::Debug for FormalLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalLog(n={}, {})", self.n, self)
    }
}

impl Add for &FormalLog {
    type Output = FormalLog;
    fn add(self, rhs: &FormalLog) -> FormalLog {
        assert_eq!(self.n, rhs.n, "ground size mismatch");
        FormalLog {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FormalLog {
    type Output = FormalLog;
    fn sub(self, rhs: &FormalLog) -> FormalLog {
        assert_eq!(self.n, rhs.n, "ground size mismatch");
        FormalLog {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &FormalLog {
    type Output = FormalLog;
    fn neg(self) -> FormalLog {
        FormalLog {
            n: self.n,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul<&BigRational> for &FormalLog {
    type Output = FormalLog;
    fn mul(self, k: &BigRational) -> FormalLog {
        FormalLog {
            n: self.n,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_of(text: &str, n: usize) -> FormalLog {
        parse_ratio(text, Some(n)).unwrap().formal_log()
    }

    fn set(ix: &[usize]) -> IndexSet {
        IndexSet::from_indices(ix.iter().copied())
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    const R1: &str = "{1,2,4}{1,3,4}{2,3}{1}{4} / {1,2}{1,3}{1,4}{2,4}{3,4}";

    #[test]
    fn hadamard_log() {
        let v = log_of("{1,2}{} / {1}{2}", 2);
        assert_eq!(v.entry(set(&[1, 2])), &q(1));
        assert_eq!(v.entry(set(&[1])), &q(-1));
        assert_eq!(v.entry(set(&[2])), &q(-1));
        assert_eq!(v.entry(IndexSet::EMPTY), &q(1));
        // omitting the empty factor gives the same vector
        assert_eq!(log_of("{1,2} / {1}{2}", 2), v);
    }

    #[test]
    fn r1_log() {
        let v = log_of(R1, 4);
        for s in [&[1, 2, 4][..], &[1, 3, 4], &[2, 3], &[1], &[4]] {
            assert_eq!(v.entry(set(s)), &q(1));
        }
        for s in [[1, 2], [1, 3], [1, 4], [2, 4], [3, 4]] {
            assert_eq!(v.entry(set(&s)), &q(-1));
        }
        assert!(v.entry(IndexSet::EMPTY).is_zero());
        assert_eq!(v.support().count(), 10);
    }

    #[test]
    fn trivial_ratio_cancels() {
        assert!(log_of("{1} / {1}", 3).is_zero());
    }

    #[test]
    fn explicit_empty_terms_are_renormalized() {
        let v = log_of("{1,2}{}^5 / {1}{2}", 2);
        assert_eq!(v, log_of("{1,2} / {1}{2}", 2));
    }

    #[test]
    fn homogeneity() {
        assert!(log_of("{1,2}{} / {1}{2}", 2).is_homogeneous());
        assert!(!log_of("{1,2} / {1}", 2).is_homogeneous());
        assert!(log_of(R1, 4).is_homogeneous());
        let r2 = "{1,2,3,4}^2{2,3}{2,4}{3,4}{1}{} / {1,2,3}{1,2,4}{1,3,4}{2,3,4}{2}{3}{4}";
        assert!(log_of(r2, 4).is_homogeneous());
    }

    #[test]
    fn permutation_action() {
        let v = log_of(R1, 4);
        assert_eq!(v.apply_permutation(&Permutation::identity(4)), v);
        assert_eq!(v.apply_permutation(&Permutation::transposition(4, 2, 3)), v);
        assert_ne!(v.apply_permutation(&Permutation::transposition(4, 1, 2)), v);
        let h = log_of("{1,2}{} / {1}{2}", 2);
        assert_eq!(h.apply_permutation(&Permutation::transposition(2, 1, 2)), h);
    }

    #[test]
    fn complement_action() {
        let h = log_of("{1,2}{} / {1}{2}", 2);
        assert_eq!(h.apply_complement(), h);
        let v = log_of(R1, 4);
        assert_eq!(v.apply_complement().apply_complement(), v);
        let c = v.apply_complement();
        assert!(c.entries().iter().sum::<BigRational>().is_zero());
        assert_eq!(c.entry(set(&[3])), v.entry(set(&[1, 2, 4])));
    }

    #[test]
    fn koteljanskii_logs() {
        assert_eq!(
            koteljanskii_log(set(&[1]), set(&[2]), 2),
            log_of("{1,2}{} / {1}{2}", 2)
        );
        assert_eq!(
            koteljanskii_log(set(&[1, 2]), set(&[1, 3]), 3),
            log_of("{1,2,3}{1} / {1,2}{1,3}", 3)
        );
        assert!(koteljanskii_log(set(&[1, 2]), set(&[1, 2]), 3).is_zero());
        assert!(koteljanskii_log(set(&[1]), set(&[1, 2]), 3).is_zero());
    }

    #[test]
    fn koteljanskii_ray_predicate() {
        assert!(log_of("{1,2,3}{1} / {1,2}{1,3}", 3).is_koteljanskii_ray());
        assert!(log_of("{1,2}{} / {1}{2}", 2).is_koteljanskii_ray());
        assert!(log_of("{1,2}^3{}^3 / {1}^3{2}^3", 2).is_koteljanskii_ray());
        assert!(!log_of(R1, 4).is_koteljanskii_ray());
        // Koteljanskii but |S| != |T|
        assert!(!log_of("{1,2,3}{} / {1}{2,3}", 3).is_koteljanskii_ray());
        // negative multiple
        assert!(!log_of("{1}{2} / {1,2}{}", 2).is_koteljanskii_ray());
    }

    #[test]
    fn delete_index_merges() {
        let v = log_of("{1,2,3}{1} / {1,2}{1,3}", 3);
        assert!(v.delete_index(3).is_zero());
        assert!(FormalLog::zero(4).delete_index(2).is_zero());
        // deleting 1 from {1,2,3}{1}/{1,2}{1,3}: {2,3}{} / {2}{3}
        assert_eq!(v.delete_index(1), log_of("{1,2}{} / {1}{2}", 2));
    }

    #[test]
    fn display_round_trips() {
        for (text, n) in [(R1, 4), ("{1,2}^3/2 / {1}^3/2{2}^3/2", 2), ("{1} / {1}", 3)] {
            let v = log_of(text, n);
            let again = log_of(&v.to_string(), n);
            assert_eq!(v, again, "{text}");
        }
    }
}
