//! Line-oriented text format for constraint systems and ray lists.
//!
//! ```text
//! n=3 order=size-then-encoding
//! = 1 1 1 1 1 1 1 1
//! >= 0 0 0 0 1 1 1 2 # M^{}
//! ray 1 -1 -1 0 1 0 0 0
//! ```
//!
//! The header fixes the ground size. Every following line holds one vector
//! whose entries are listed by subset size, then by subset encoding
//! (`{}`, `{1}`, `{2}`, `{3}`, `{1,2}`, `{1,3}`, `{2,3}`, `{1,2,3}` for
//! `n = 3`). Entries are integers or `p/q`. Text after `#` is a label, and
//! lines holding only a comment are skipped.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{Constraint, ConstraintSystem, Ray};
use crate::subset::{display_order, MAX_GROUND};

pub const ORDER_TAG: &str = "size-then-encoding";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct VectorFileError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorFile {
    pub n: usize,
    pub equalities: Vec<Vec<BigRational>>,
    pub inequalities: Vec<Constraint>,
    pub rays: Vec<(String, Vec<BigRational>)>,
}

impl VectorFile {
    pub fn into_system(self) -> ConstraintSystem {
        ConstraintSystem::from_parts(self.n, self.equalities, self.inequalities)
    }
}

fn write_vector(out: &mut String, n: usize, entries: &[String]) {
    let order = display_order(n);
    for s in order {
        out.push(' ');
        out.push_str(&entries[s.bits() as usize]);
    }
}

fn header(n: usize) -> String {
    format!("n={n} order={ORDER_TAG}\n")
}

pub fn write_system(sys: &ConstraintSystem) -> String {
    let n = sys.ground_size();
    let mut out = header(n);
    for e in sys.equalities() {
        out.push('=');
        write_vector(
            &mut out,
            n,
            &e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        );
        out.push('\n');
    }
    for c in sys.inequalities() {
        out.push_str(">=");
        write_vector(
            &mut out,
            n,
            &c.vector.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        );
        let _ = writeln!(out, " # {}", c.label);
    }
    out
}

/// Writes rays with optional labels (`None` leaves the line unlabeled).
pub fn write_rays(n: usize, rays: &[(Option<String>, &Ray)]) -> String {
    let mut out = header(n);
    for (label, r) in rays {
        out.push_str("ray");
        write_vector(
            &mut out,
            n,
            &r.entries()
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>(),
        );
        match label {
            Some(l) => {
                let _ = writeln!(out, " # {l}");
            }
            None => out.push('\n'),
        }
    }
    out
}

fn parse_entry(token: &str) -> Option<BigRational> {
    match token.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => token.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn parse_vector_file(text: &str) -> Result<VectorFile, VectorFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, head) = lines.next().ok_or(VectorFileError {
        line: 1,
        message: "missing header".into(),
    })?;
    let err = |line: usize, message: String| VectorFileError {
        line: line + 1,
        message,
    };
    let mut n = None;
    for field in head.split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            Some(("order", v)) if v == ORDER_TAG => {}
            Some(("order", v)) => return Err(err(hline, format!("unsupported order '{v}'"))),
            _ => return Err(err(hline, format!("unexpected header field '{field}'"))),
        }
    }
    let n = n
        .filter(|&n| (1..=MAX_GROUND).contains(&n))
        .ok_or_else(|| err(hline, "header must set n in 1..=16".into()))?;
    let order = display_order(n);
    let mut file = VectorFile {
        n,
        ..Default::default()
    };
    for (lineno, line) in lines {
        let (body, label) = match line.split_once('#') {
            Some((b, l)) => (b, l.trim().to_string()),
            None => (line, String::new()),
        };
        let mut tokens = body.split_whitespace();
        let Some(kind) = tokens.next() else {
            continue;
        };
        let mut entries = vec![BigRational::zero(); 1 << n];
        let mut count = 0;
        for tok in tokens {
            let x =
                parse_entry(tok).ok_or_else(|| err(lineno, format!("invalid entry '{tok}'")))?;
            if count < order.len() {
                entries[order[count].bits() as usize] = x;
            }
            count += 1;
        }
        if count != order.len() {
            return Err(err(
                lineno,
                format!("expected {} entries, found {count}", order.len()),
            ));
        }
        match kind {
            "=" => file.equalities.push(entries),
            ">=" => file.inequalities.push(Constraint {
                label,
                vector: entries,
            }),
            "ray" => file.rays.push((label, entries)),
            other => return Err(err(lineno, format!("unknown line kind '{other}'"))),
        }
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{build_d_system, build_e_system, extreme_rays};

    #[test]
    fn system_round_trip() {
        for sys in [build_e_system(3).unwrap(), build_d_system(4).unwrap()] {
            let text = write_system(&sys);
            let back = parse_vector_file(&text).unwrap().into_system();
            assert_eq!(back, sys);
        }
    }

    #[test]
    fn ray_listing_layout() {
        let rays = extreme_rays(&build_e_system(3).unwrap()).unwrap();
        let labeled: Vec<(Option<String>, &Ray)> = rays.iter().map(|r| (None, r)).collect();
        let text = write_rays(3, &labeled);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n=3 order=size-then-encoding"));
        let file = parse_vector_file(&text).unwrap();
        assert_eq!(file.rays.len(), 6);
        for ((_, v), r) in file.rays.iter().zip(&rays) {
            assert_eq!(v, r.to_formal_log().entries());
        }
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(parse_vector_file("").unwrap_err().line, 1);
        let e = parse_vector_file("n=2 order=size-then-encoding\n>= 1 2 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_vector_file("n=2 order=size-then-encoding\nfoo 1 2 3 4\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_vector_file("n=2 order=lex\n").is_err());
        assert!(parse_vector_file("n=2 order=size-then-encoding\n# note\n")
            .unwrap()
            .rays
            .is_empty());
        assert!(parse_vector_file("n=2 order=size-then-encoding\n= 1 x 1 1\n").is_err());
    }
}
