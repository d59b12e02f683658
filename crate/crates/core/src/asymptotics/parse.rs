//! Text input for polynomial matrices: one row per line, entries separated
//! by commas, each entry a polynomial in `e` such as `1 + 2*e - 3/2*e^2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{PolyMatrix, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, entry {entry}: {message}")]
pub struct PolyParseError {
    pub line: usize,
    pub entry: usize,
    pub message: String,
}

/// Parses a single polynomial. Whitespace is ignored.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, String> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty entry".into());
    }
    let mut pos = 0;
    let mut acc = Polynomial::zero();
    let mut first = true;
    while pos < s.len() {
        let negative = match s[pos] {
            '+' => {
                pos += 1;
                false
            }
            '-' => {
                pos += 1;
                true
            }
            _ if first => false,
            c => return Err(format!("expected '+' or '-' before '{c}'")),
        };
        first = false;
        let coeff = if pos < s.len() && s[pos].is_ascii_digit() {
            let c = read_rational(&s, &mut pos)?;
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
                if pos >= s.len() || s[pos] != 'e' {
                    return Err("expected 'e' after '*'".into());
                }
            }
            c
        } else {
            BigRational::one()
        };
        let degree = if pos < s.len() && s[pos] == 'e' {
            pos += 1;
            if pos < s.len() && s[pos] == '^' {
                pos += 1;
                let start = pos;
                while pos < s.len() && s[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = s[start..pos].iter().collect();
                digits
                    .parse::<usize>()
                    .map_err(|_| "expected an exponent after '^'".to_string())?
            } else {
                1
            }
        } else if pos < s.len() && !matches!(s[pos], '+' | '-') {
            return Err(format!("unexpected '{}'", s[pos]));
        } else {
            0
        };
        if pos > 0 && matches!(s[pos - 1], '+' | '-') {
            return Err("dangling sign".into());
        }
        let term = Polynomial::monomial(if negative { -coeff } else { coeff }, degree);
        acc = &acc + &term;
    }
    Ok(acc)
}

fn read_rational(s: &[char], pos: &mut usize) -> Result<BigRational, String> {
    let int = |pos: &mut usize| -> Result<BigInt, String> {
        let start = *pos;
        while *pos < s.len() && s[*pos].is_ascii_digit() {
            *pos += 1;
        }
        s[start..*pos]
            .iter()
            .collect::<String>()
            .parse::<BigInt>()
            .map_err(|_| "expected digits".to_string())
    };
    let p = int(pos)?;
    if *pos < s.len() && s[*pos] == '/' {
        *pos += 1;
        let q = int(pos)?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(p))
    }
}

/// Parses a square polynomial matrix. Blank lines and lines starting with
/// `#` are skipped.
pub fn parse_poly_matrix(text: &str) -> Result<PolyMatrix, PolyParseError> {
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    let mut last_line = 0;
    for (k, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        last_line = k + 1;
        let row = trimmed
            .split(',')
            .enumerate()
            .map(|(j, tok)| {
                parse_polynomial(tok).map_err(|message| PolyParseError {
                    line: k + 1,
                    entry: j + 1,
                    message,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(PolyParseError {
                    line: k + 1,
                    entry: row.len(),
                    message: format!("expected {} entries", first.len()),
                });
            }
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows[0].len() != n {
        return Err(PolyParseError {
            line: last_line.max(1),
            entry: 0,
            message: format!("matrix must be square and nonempty, got {n} rows"),
        });
    }
    Ok(PolyMatrix::from_rows(rows).expect("checked square"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn polynomial_syntax() {
        let p = parse_polynomial("1 + 2*e - 3/2*e^2").unwrap();
        assert_eq!(p.coefficients(), &[q(1, 1), q(2, 1), q(-3, 2)]);
        assert_eq!(parse_polynomial("e").unwrap(), Polynomial::e());
        assert_eq!(parse_polynomial("-e^3").unwrap().coefficient(3), q(-1, 1));
        assert_eq!(parse_polynomial("2e").unwrap().coefficient(1), q(2, 1));
        assert!(parse_polynomial("0").unwrap().is_zero());
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("1 +").is_err());
        assert!(parse_polynomial("x").is_err());
        assert!(parse_polynomial("1/0").is_err());
        assert!(parse_polynomial("e^").is_err());
    }

    #[test]
    fn display_round_trip() {
        for text in ["3 + e^2", "-1/2*e", "e - e^4", "7"] {
            let p = parse_polynomial(text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn matrix_file() {
        let m = parse_poly_matrix("# comment\n1, e\n\n0, 1 + e\n").unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.get(1, 1), &parse_polynomial("1+e").unwrap());
        let err = parse_poly_matrix("1, 2\n3\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_poly_matrix("1, 2\n3, x\n").unwrap_err();
        assert_eq!((err.line, err.entry), (2, 2));
        assert!(parse_poly_matrix("1, 2\n").is_err());
    }
}
