use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{bareiss_rank, clear_denominators};
use crate::subset::{IndexSet, Permutation};

/// A dense matrix of exact rationals, columns indexed by the ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct MatrixParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::from_integer(1.into()));
        }
        m
    }

    /// Builds from integer rows; all rows must have equal length.
    pub fn from_int_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigRational::from_integer(x.into())));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigRational) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Rank of the columns indexed by `t`, by fraction-free elimination.
    pub fn column_rank(&self, t: IndexSet) -> usize {
        if t.is_empty() || self.rows == 0 {
            return 0;
        }
        let cols: Vec<usize> = t.iter().map(|i| i - 1).collect();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let picked: Vec<BigRational> =
                    cols.iter().map(|&c| self.get(r, c).clone()).collect();
                clear_denominators(&picked)
            })
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        bareiss_rank(rows)
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Column `k` of the input becomes column `σ(k)` of the output.
    pub fn permute_columns(&self, sigma: &Permutation) -> RationalMatrix {
        assert_eq!(sigma.size(), self.cols, "permutation size mismatch");
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, sigma.apply(c + 1) - 1, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).to_f64().expect("finite entry")
        })
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn parse_rational(token: &str) -> Option<BigRational> {
    match token.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => token.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Parses a matrix file: one row per line, entries separated by whitespace,
/// each an integer or `p/q`. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix, MatrixParseError> {
    let mut cols = None;
    let mut rows = 0;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut count = 0;
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).unwrap() + offset;
            offset = column + token.len();
            let x = parse_rational(token).ok_or_else(|| MatrixParseError {
                line: lineno + 1,
                column: column + 1,
                message: format!("invalid rational '{token}'"),
            })?;
            entries.push(x);
            count += 1;
        }
        match cols {
            None => cols = Some(count),
            Some(c) if c != count => {
                return Err(MatrixParseError {
                    line: lineno + 1,
                    column: 1,
                    message: format!("expected {c} entries, found {count}"),
                })
            }
            _ => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or(MatrixParseError {
        line: 1,
        column: 1,
        message: "empty matrix".into(),
    })?;
    Ok(RationalMatrix::new(rows, cols, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_reports_positions() {
        let m = parse_matrix("1 0 1/2\n# comment\n\n0 -3 2\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.get(0, 2), &BigRational::new(1.into(), 2.into()));
        assert_eq!(m.get(1, 1), &BigRational::from_integer((-3).into()));
        let err = parse_matrix("1 2\n3 x\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = parse_matrix("1 2\n3\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_matrix("1/0").is_err());
        assert!(parse_matrix("").is_err());
        let again = parse_matrix(&m.to_string()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn column_ranks() {
        let m7 = RationalMatrix::from_int_rows(4, &[[1, 1, 1, 1], [0, 1, 2, 3]]);
        assert_eq!(m7.column_rank(IndexSet::from_indices([1, 3])), 2);
        assert_eq!(m7.column_rank(IndexSet::from_indices([4])), 1);
        assert_eq!(m7.column_rank(IndexSet::EMPTY), 0);
        let sum = m7.direct_sum(&RationalMatrix::identity(1));
        assert_eq!((sum.rows(), sum.cols()), (3, 5));
        assert_eq!(sum.column_rank(IndexSet::full(5)), 3);
    }

    #[test]
    fn column_permutation() {
        let m = RationalMatrix::from_int_rows(3, &[[1, 2, 3]]);
        let sigma = Permutation::from_images(&[2, 3, 1]).unwrap();
        let p = m.permute_columns(&sigma);
        assert_eq!(p, RationalMatrix::from_int_rows(3, &[[3, 1, 2]]));
    }
}
