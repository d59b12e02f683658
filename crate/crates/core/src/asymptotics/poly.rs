//! Dense univariate polynomials in `e` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient `k` multiplies `e^k`. Trailing zeros are trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c · e^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// The variable `e`.
    pub fn e() -> Self {
        Polynomial::monomial(BigRational::one(), 1)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree and coefficient of the lowest nonzero term.
    pub fn lowest_term(&self) -> Option<(usize, &BigRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Horner evaluation in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact quotient `self / d`, or `None` when `d` is zero or does not
    /// divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Polynomial::new(quot))
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|k| self.coefficient(k) + rhs.coefficient(k))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|k| self.coefficient(k) - rhs.coefficient(k))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Written in the input syntax, lowest degree first: `3 + e^2`, `-1/2*e`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "e".to_string(),
                _ => format!("e^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Polynomial::from_integers(&[1, 1]);
        let sq = &p * &p;
        assert_eq!(sq, Polynomial::from_integers(&[1, 2, 1]));
        assert_eq!(sq.div_exact(&p), Some(p.clone()));
        assert_eq!(Polynomial::from_integers(&[1, 0, 1]).div_exact(&p), None);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn lowest_term_and_display() {
        let p = Polynomial::new(vec![
            BigRational::zero(),
            BigRational::zero(),
            BigRational::new(3.into(), 2.into()),
            BigRational::from_integer((-1).into()),
        ]);
        assert_eq!(
            p.lowest_term().map(|(k, c)| (k, c.clone())),
            Some((2, BigRational::new(3.into(), 2.into())))
        );
        assert_eq!(p.to_string(), "3/2*e^2 - e^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_integers(&[3, 0, 1]).to_string(), "3 + e^2");
    }

    #[test]
    fn horner() {
        let p = Polynomial::from_integers(&[3, 0, 1]);
        assert_eq!(p.eval_f64(2.0), 7.0);
    }
}
