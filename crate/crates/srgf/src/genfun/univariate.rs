//! Dense expansion and exact comparison for one-variable functions.
//!
//! Every nonzero denominator exponent on the line can be flipped
//! positive, after which each term has a unique Laurent expansion that
//! is bounded below.  Multiplying by `1/(1 - x^b)` is a strided
//! prefix sum, so a whole window of coefficients costs `O(window * k)`
//! per term.  Zero testing is exact: clearing denominators turns the
//! function into a polynomial whose degree is bounded by the visible
//! exponents, so it suffices to check a window that long.

use super::GenFun;
use crate::exactmath::Rational;
use crate::{Error, Result};
use num_traits::{Signed, ToPrimitive, Zero};

const WINDOW_CAP: i64 = 5_000_000;

/// Reoriented view of one term: coefficient, lowest exponent, positive
/// denominator strides.
fn positive_form(f: &GenFun) -> Result<Vec<(Rational, i64, Vec<i64>)>> {
    assert_eq!(f.dim(), 1, "one-variable function expected");
    let mut out = Vec::with_capacity(f.terms().len());
    for t in f.terms() {
        let mut coef = t.coefficient.clone();
        let mut q = t.numerator.entry(0).clone();
        let mut strides = Vec::with_capacity(t.denominators.len());
        for a in &t.denominators {
            let b = a.entry(0);
            if b.is_negative() {
                coef = -coef;
                q -= b;
                strides.push(-b.clone());
            } else {
                strides.push(b.clone());
            }
        }
        let q = q
            .to_i64()
            .ok_or_else(|| Error::BadInput("exponent too large for a series window".into()))?;
        let strides = strides
            .iter()
            .map(|b| {
                b.to_i64()
                    .ok_or_else(|| Error::BadInput("denominator exponent too large".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        out.push((coef, q, strides));
    }
    Ok(out)
}

/// Laurent-series coefficients of `x^lo .. x^hi` (inclusive), with all
/// denominators oriented to positive exponents.
pub fn univariate_series(f: &GenFun, lo: i64, hi: i64) -> Result<Vec<Rational>> {
    assert!(lo <= hi);
    let terms = positive_form(f)?;
    let base = terms.iter().map(|(_, q, _)| *q).min().unwrap_or(lo).min(lo);
    let len = hi - base + 1;
    if len > WINDOW_CAP {
        return Err(Error::SearchExhausted(format!(
            "series window of {len} coefficients is too large"
        )));
    }
    let len = len as usize;
    let mut acc = vec![Rational::zero(); len];
    let mut scratch = vec![Rational::zero(); len];
    for (coef, q, strides) in &terms {
        for c in scratch.iter_mut() {
            c.set_zero();
        }
        let start = (q - base) as usize;
        if start < len {
            scratch[start] = coef.clone();
        }
        for &b in strides {
            let b = b as usize;
            for i in b..len {
                let (a, rest) = scratch.split_at_mut(i);
                rest[0] += &a[i - b];
            }
        }
        for (a, s) in acc.iter_mut().zip(scratch.iter()) {
            *a += s;
        }
    }
    Ok(acc[(lo - base) as usize..].to_vec())
}

/// Exact zero test: the cleared numerator has degree at most
/// `max_i(q_i + sum of all strides - own strides)`, so the function is
/// zero exactly when the series vanishes through that bound.
pub fn univariate_zero(f: &GenFun) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let terms = positive_form(f)?;
    let total: i64 = terms.iter().flat_map(|(_, _, s)| s.iter()).sum();
    let lo = terms.iter().map(|(_, q, _)| *q).min().expect("nonempty");
    let hi = terms
        .iter()
        .map(|(_, q, s)| {
            let own: i64 = s.iter().sum();
            q + total - own
        })
        .max()
        .expect("nonempty");
    let window = univariate_series(f, lo, hi.max(lo))?;
    Ok(window.iter().all(|c| c.is_zero()))
}

/// Convenience wrapper: exact equality of two one-variable functions.
pub fn univariate_equal(f: &GenFun, g: &GenFun) -> Result<bool> {
    univariate_zero(&f.sub(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, IntVector};
    use crate::genfun::Term;
    use crate::oracle;

    fn iv(vs: &[i64]) -> IntVector {
        IntVector::from_i64(vs)
    }

    fn segment(m: i64) -> GenFun {
        GenFun::from_terms(
            1,
            vec![
                Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]),
                Term::new(rat(-1, 1), iv(&[m]), vec![iv(&[1])]),
            ],
        )
    }

    #[test]
    fn test_series_segment() {
        let coeffs = univariate_series(&segment(3), 0, 5).unwrap();
        let expect: Vec<Rational> =
            [1, 1, 1, 0, 0, 0].iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(coeffs, expect);
    }

    #[test]
    fn test_series_negative_window() {
        // x^{-2}/(1-x^2): support {-2, 0, 2, ...}.
        let f = GenFun::from_terms(
            1,
            vec![Term::new(rat(1, 1), iv(&[-2]), vec![iv(&[2])])],
        );
        let coeffs = univariate_series(&f, -3, 3).unwrap();
        let expect: Vec<Rational> =
            [0, 1, 0, 1, 0, 1, 0].iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(coeffs, expect);
    }

    #[test]
    fn test_zero_detects_reorientation() {
        // 1/(1-x) + x^{-1}/(1-x^{-1}) is identically zero.
        let f = GenFun::from_terms(
            1,
            vec![
                Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]),
                Term::new(rat(1, 1), iv(&[-1]), vec![iv(&[-1])]),
            ],
        );
        assert!(!f.is_zero());
        assert!(univariate_zero(&f).unwrap());
    }

    #[test]
    fn test_zero_rejects_nonzero() {
        assert!(!univariate_zero(&segment(3)).unwrap());
        assert!(!univariate_equal(&segment(3), &segment(2)).unwrap());
        assert!(univariate_equal(&segment(3), &segment(3)).unwrap());
    }

    #[test]
    fn test_semigroup_identity_small() {
        // (1 - x^15)/((1-x^3)(1-x^5)) enumerates the semigroup <3,5>.
        let f = GenFun::from_terms(
            1,
            vec![
                Term::new(rat(1, 1), iv(&[0]), vec![iv(&[3]), iv(&[5])]),
                Term::new(rat(-1, 1), iv(&[15]), vec![iv(&[3]), iv(&[5])]),
            ],
        );
        let upto = 40i64;
        let member = oracle::semigroup_membership(&[3, 5], upto as usize);
        let coeffs = univariate_series(&f, 0, upto).unwrap();
        for (m, c) in coeffs.iter().enumerate() {
            let expect = if member[m] { rat(1, 1) } else { rat(0, 1) };
            assert_eq!(*c, expect, "x^{m}");
        }
    }
}
