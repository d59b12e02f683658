//! Text grammar for ratios of products of principal minors.
//!
//! ```text
//! ratio   := product '/' product
//! product := term+
//! term    := '{' [index (',' index)*] '}' ['^' int ['/' int]]
//! ```
//!
//! Whitespace is ignored everywhere. A `/` directly after an integer
//! exponent is read as a fractional exponent only when a digit follows it;
//! otherwise it separates numerator from denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{RatioError, RatioSpec, Term};
use crate::subset::{IndexSet, MAX_GROUND};

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    /// Peeks past the next significant character.
    fn peek_second(&mut self) -> Option<char> {
        self.skip_ws();
        let mut rest = self.text[self.pos..].chars();
        rest.next()?;
        rest.find(|c| !c.is_whitespace())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<(), RatioError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected '{want}', found '{c}'"))),
            None => Err(self.syntax(format!("expected '{want}', found end of input"))),
        }
    }

    fn syntax(&self, message: String) -> RatioError {
        RatioError::Syntax {
            position: self.pos,
            message,
        }
    }

    fn integer(&mut self) -> Result<(BigInt, usize), RatioError> {
        self.skip_ws();
        let start = self.pos;
        let digits: String = self.text[start..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(self.syntax("expected an integer".into()));
        }
        self.pos += digits.len();
        Ok((digits.parse().expect("ascii digits"), start))
    }

    fn index(&mut self, n: Option<usize>) -> Result<usize, RatioError> {
        let (value, position) = self.integer()?;
        let index: usize = value.try_into().map_err(|_| RatioError::IndexOutOfRange {
            index: usize::MAX,
            n: n.unwrap_or(MAX_GROUND),
            position,
        })?;
        let limit = n.unwrap_or(MAX_GROUND);
        if index == 0 || index > limit {
            return Err(RatioError::IndexOutOfRange {
                index,
                n: limit,
                position,
            });
        }
        Ok(index)
    }

    fn term(&mut self, n: Option<usize>) -> Result<Term, RatioError> {
        self.expect('{')?;
        let mut set = IndexSet::EMPTY;
        if self.peek() != Some('}') {
            loop {
                let position = self.pos;
                let i = self.index(n)?;
                if set.contains(i) {
                    return Err(RatioError::Syntax {
                        position,
                        message: format!("index {i} repeated within a set"),
                    });
                }
                set = set.with(i);
                match self.peek() {
                    Some(',') => {
                        self.bump();
                    }
                    _ => break,
                }
            }
        }
        self.expect('}')?;
        let exponent = if self.peek() == Some('^') {
            self.bump();
            let (p, position) = self.integer()?;
            let q = if self.peek() == Some('/')
                && self.peek_second().is_some_and(|c| c.is_ascii_digit())
            {
                self.bump();
                let (q, q_pos) = self.integer()?;
                if q.is_zero() {
                    return Err(RatioError::Syntax {
                        position: q_pos,
                        message: "zero denominator in exponent".into(),
                    });
                }
                q
            } else {
                BigInt::one()
            };
            if p.is_zero() {
                return Err(RatioError::NonPositiveExponent { position });
            }
            BigRational::new(p, q)
        } else {
            BigRational::one()
        };
        Ok(Term { set, exponent })
    }

    fn product(&mut self, n: Option<usize>) -> Result<Vec<Term>, RatioError> {
        let mut terms = Vec::new();
        while self.peek() == Some('{') {
            terms.push(self.term(n)?);
        }
        if terms.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.syntax(format!("expected '{{', found '{c}'")),
                None => self.syntax("expected '{', found end of input".into()),
            });
        }
        Ok(terms)
    }
}

/// Parses a ratio over the ground set `{1..n}`.
///
/// With `n = None` the ground size is the largest index mentioned (at
/// least 1).
pub fn parse_ratio(text: &str, n: Option<usize>) -> Result<RatioSpec, RatioError> {
    if let Some(n) = n {
        if n == 0 || n > MAX_GROUND {
            return Err(RatioError::GroundSize(n));
        }
    }
    let mut sc = Scanner { text, pos: 0 };
    let numerator = sc.product(n)?;
    sc.expect('/')?;
    let denominator = sc.product(n)?;
    if let Some(c) = sc.peek() {
        return Err(sc.syntax(format!("unexpected '{c}' after ratio")));
    }
    let ground_size = n.unwrap_or_else(|| {
        numerator
            .iter()
            .chain(&denominator)
            .map(|t| t.set.max_element())
            .max()
            .unwrap_or(0)
            .max(1)
    });
    Ok(RatioSpec {
        ground_size,
        numerator,
        denominator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> IndexSet {
        IndexSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn hadamard_case() {
        let r = parse_ratio("{1,2}{} / {1}{2}", Some(2)).unwrap();
        assert_eq!(r.ground_size, 2);
        let num: Vec<_> = r.numerator.iter().map(|t| t.set).collect();
        let den: Vec<_> = r.denominator.iter().map(|t| t.set).collect();
        assert_eq!(num, vec![set(&[1, 2]), IndexSet::EMPTY]);
        assert_eq!(den, vec![set(&[1]), set(&[2])]);
    }

    #[test]
    fn r1_case() {
        let r = parse_ratio(
            "{1,2,4}{1,3,4}{2,3}{1}{4} / {1,2}{1,3}{1,4}{2,4}{3,4}",
            Some(4),
        )
        .unwrap();
        assert_eq!(r.numerator.len(), 5);
        assert_eq!(r.denominator.len(), 5);
        assert_eq!(r.numerator[0].set, set(&[1, 2, 4]));
        assert_eq!(r.denominator[4].set, set(&[3, 4]));
    }

    #[test]
    fn fractional_exponents() {
        let r = parse_ratio("{1,2}^3/2 / {1}^3/2{2}^3/2", None).unwrap();
        let half3 = BigRational::new(3.into(), 2.into());
        assert_eq!(r.ground_size, 2);
        assert!(r
            .numerator
            .iter()
            .chain(&r.denominator)
            .all(|t| t.exponent == half3));
        assert_eq!(r.denominator.len(), 2);
    }

    #[test]
    fn integer_exponent_before_separator() {
        let r = parse_ratio("{1,2}^2 / {1}^2 {2}^2", None).unwrap();
        assert_eq!(r.numerator[0].exponent, BigRational::from_integer(2.into()));
        assert_eq!(r.denominator.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ratio("{1,2} / {1}{3}", Some(2)) {
            Err(RatioError::IndexOutOfRange {
                index, position, ..
            }) => {
                assert_eq!(index, 3);
                assert_eq!(position, 12);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ratio("{1}^0 / {1}", None),
            Err(RatioError::NonPositiveExponent { position: 4 })
        ));
        assert!(matches!(
            parse_ratio("{1} {2}", None),
            Err(RatioError::Syntax { position: 7, .. })
        ));
        assert!(matches!(
            parse_ratio("{1,} / {1}", None),
            Err(RatioError::Syntax { .. })
        ));
        assert!(matches!(
            parse_ratio("{0} / {1}", None),
            Err(RatioError::IndexOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            parse_ratio("{1,1} / {1}", None),
            Err(RatioError::Syntax { .. })
        ));
        assert!(matches!(
            parse_ratio("{1}/{1} x", None),
            Err(RatioError::Syntax { .. })
        ));
    }
}
