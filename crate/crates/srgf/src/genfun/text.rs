//! Canonical text form for generating functions.
//!
//! The grammar is one line per function:
//!
//! ```text
//! 0
//! 1 * x^(0,0) / (1 - x^(1,0)) (1 - x^(0,1))
//! -1/2 * x^(3) + 1 * x^(0) / (1 - x^(2))
//! ```
//!
//! Terms are joined by ` + ` with signs carried by the coefficients,
//! exponent vectors print as comma-separated integers in parentheses
//! (`()` in dimension zero), and printing a parsed function reproduces
//! the input exactly once terms are in canonical order.

use super::{GenFun, Term};
use crate::exactmath::{Int, IntVector, Rational};
use crate::{Error, Result};
use num_traits::One;
use std::fmt;
use std::str::FromStr;

impl fmt::Display for GenFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self.terms.iter().map(render_term).collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

fn render_vector(v: &IntVector) -> String {
    let body: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("({})", body.join(","))
}

fn render_term(t: &Term) -> String {
    let mut s = format!("{} * x^{}", t.coefficient, render_vector(&t.numerator));
    if !t.denominators.is_empty() {
        let factors: Vec<String> = t
            .denominators
            .iter()
            .map(|a| format!("(1 - x^{})", render_vector(a)))
            .collect();
        s.push_str(" / ");
        s.push_str(&factors.join(" "));
    }
    s
}

/// Parse the canonical text form back into a function of the given
/// dimension.  Inverse of `Display` up to term order.
pub fn parse_genfun(dim: usize, s: &str) -> Result<GenFun> {
    let s = s.trim();
    if s == "0" {
        return Ok(GenFun::zero(dim));
    }
    let mut terms = Vec::new();
    for chunk in s.split(" + ") {
        terms.push(parse_term(dim, chunk)?);
    }
    Ok(GenFun::from_terms(dim, terms))
}

fn parse_term(dim: usize, s: &str) -> Result<Term> {
    let (head, tail) = match s.split_once(" / ") {
        Some((h, t)) => (h, Some(t)),
        None => (s, None),
    };
    let (coeff_s, mono_s) = head
        .split_once(" * ")
        .ok_or_else(|| Error::Parse(format!("term without ` * `: {s:?}")))?;
    let coefficient = parse_rational(coeff_s)?;
    let numerator = parse_exponent(dim, mono_s)?;
    let mut denominators = Vec::new();
    if let Some(tail) = tail {
        let mut rest = tail.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix("(1 - ")
                .ok_or_else(|| Error::Parse(format!("bad factor at {rest:?}")))?;
            let close = find_factor_end(inner)
                .ok_or_else(|| Error::Parse(format!("unterminated factor in {s:?}")))?;
            denominators.push(parse_exponent(dim, &inner[..close])?);
            rest = inner[close..]
                .strip_prefix(')')
                .expect("factor end sits on a closing parenthesis")
                .trim_start();
        }
    }
    for a in &denominators {
        if a.is_zero() {
            return Err(Error::Parse("zero denominator exponent".into()));
        }
    }
    Ok(Term::new(coefficient, numerator, denominators))
}

/// Index just past the monomial `x^(...)` at the start of `s`, i.e. the
/// position of the factor's own closing parenthesis.
fn find_factor_end(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    if !s.starts_with("x^(") {
        return None;
    }
    let mut i = 3;
    while i < bytes.len() && bytes[i] != b')' {
        i += 1;
    }
    if i < bytes.len() {
        Some(i + 1)
    } else {
        None
    }
}

fn parse_exponent(dim: usize, s: &str) -> Result<IntVector> {
    let body = s
        .strip_prefix("x^(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad exponent monomial {s:?}")))?;
    let entries: Vec<Int> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|e| Int::from_str(e.trim()).map_err(|_| Error::Parse(format!("bad integer {e:?}"))))
            .collect::<Result<_>>()?
    };
    if entries.len() != dim {
        return Err(Error::Parse(format!(
            "exponent of dimension {}, expected {dim}",
            entries.len()
        )));
    }
    Ok(IntVector::new(entries))
}

fn parse_rational(s: &str) -> Result<Rational> {
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer =
        Int::from_str(num_s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let denom = match den_s {
        Some(d) => Int::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => Int::one(),
    };
    if denom == Int::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(vs: &[i64]) -> IntVector {
        IntVector::from_i64(vs)
    }

    #[test]
    fn test_display_zero() {
        assert_eq!(GenFun::zero(3).to_string(), "0");
        assert_eq!(parse_genfun(3, "0").unwrap(), GenFun::zero(3));
    }

    #[test]
    fn test_display_quadrant() {
        let f = GenFun::from_terms(
            2,
            vec![Term::new(
                rat(1, 1),
                iv(&[0, 0]),
                vec![iv(&[1, 0]), iv(&[0, 1])],
            )],
        );
        assert_eq!(f.to_string(), "1 * x^(0,0) / (1 - x^(0,1)) (1 - x^(1,0))");
        assert_eq!(parse_genfun(2, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn test_parse_mixed() {
        let s = "-1/2 * x^(3,-1) + 2 * x^(0,0) / (1 - x^(1,-4))";
        let f = parse_genfun(2, s).unwrap();
        assert_eq!(f.terms().len(), 2);
        // Printing normalizes to canonical term order.
        let canonical = "2 * x^(0,0) / (1 - x^(1,-4)) + -1/2 * x^(3,-1)";
        assert_eq!(f.to_string(), canonical);
        assert_eq!(parse_genfun(2, canonical).unwrap(), f);
    }

    #[test]
    fn test_dimension_zero() {
        let f = GenFun::from_terms(0, vec![Term::monomial(rat(5, 3), iv(&[]))]);
        assert_eq!(f.to_string(), "5/3 * x^()");
        assert_eq!(parse_genfun(0, "5/3 * x^()").unwrap(), f);
    }

    #[test]
    fn test_rejects_garbage() {
        assert!(parse_genfun(1, "1 * x^(0) / (1 - x^(0))").is_err());
        assert!(parse_genfun(2, "1 * x^(0)").is_err());
        assert!(parse_genfun(1, "x^(0)").is_err());
        assert!(parse_genfun(1, "1 * x^(0) / (2 - x^(1))").is_err());
    }

    #[test]
    fn test_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=3);
            let n_terms = rng.gen_range(1..=4);
            let mut terms = Vec::new();
            for _ in 0..n_terms {
                let numer = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
                if numer == rat(0, 1) {
                    continue;
                }
                let p = IntVector::new((0..dim).map(|_| Int::from(rng.gen_range(-5..=5i64))).collect());
                let k = rng.gen_range(0..=2);
                let mut dens = Vec::new();
                for _ in 0..k {
                    let mut a = IntVector::new(
                        (0..dim).map(|_| Int::from(rng.gen_range(-3..=3i64))).collect(),
                    );
                    if a.is_zero() {
                        a = IntVector::unit(dim, 0);
                    }
                    dens.push(a);
                }
                terms.push(Term::new(numer, p, dens));
            }
            let f = GenFun::from_terms(dim, terms);
            let printed = f.to_string();
            let parsed = parse_genfun(dim, &printed).unwrap();
            assert_eq!(parsed, f, "round trip failed for {printed}");
            assert_eq!(parsed.to_string(), printed);
        }
    }
}
