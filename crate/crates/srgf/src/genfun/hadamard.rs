//! Hadamard products and Boolean set operations.
//!
//! The Hadamard product of two expansions keeps the monomials common
//! to both.  For a pair of terms it is computed exactly: matching
//! exponents `p_1 + sum mu_i a_i = p_2 + sum nu_j c_j` form the
//! nonnegative lattice points of an affine slice, a pointed (usually
//! unbounded) polyhedron whose generating function is pushed through
//! the monomial map recovering the common exponent.  A certificate
//! direction `l` with `<l, a> < 0` for every denominator of both terms
//! guarantees both expansions converge on a shared region.
//! Intersections reorient terms against one such direction and sum the
//! pairwise products; unions and differences follow by
//! inclusion-exclusion.

use super::{expansion_direction, reorient, substitute, GenFun, MonomialMap, Term};
use crate::barvinok::pointed_genfun;
use crate::exactmath::{solve_affine_lattice, Int, IntMatrix, IntVector};
use crate::polyhedra::Polyhedron;
use crate::{Error, Result};
use num_traits::Signed;

/// Hadamard product of two single terms under a shared certificate
/// direction; errors if the certificate does not dominate every
/// denominator.
pub fn hadamard(t1: &Term, t2: &Term, l: &IntVector) -> Result<GenFun> {
    let d = t1.numerator.dim();
    assert_eq!(t2.numerator.dim(), d);
    assert_eq!(l.dim(), d);
    for a in t1.denominators.iter().chain(t2.denominators.iter()) {
        if !l.dot(a).is_negative() {
            return Err(Error::BadInput(
                "certificate direction must pair negatively with every denominator".into(),
            ));
        }
    }
    let k1 = t1.denominators.len();
    let k2 = t2.denominators.len();
    let coeff = &t1.coefficient * &t2.coefficient;

    if k1 + k2 == 0 {
        // Two bare monomials match exactly when their exponents agree.
        if t1.numerator == t2.numerator {
            return Ok(GenFun::from_terms(
                d,
                vec![Term::monomial(coeff, t1.numerator.clone())],
            ));
        }
        return Ok(GenFun::zero(d));
    }

    // Columns [a_1 .. a_k1, -c_1 .. -c_k2]: solutions of
    // M xi = p_2 - p_1 with xi >= 0 are exactly the matched exponent
    // pairs.
    let mut cols: Vec<IntVector> = t1.denominators.clone();
    cols.extend(t2.denominators.iter().map(|c| -c));
    let m = IntMatrix::from_cols(cols);
    let target = &t2.numerator - &t1.numerator;
    let Some(sol) = solve_affine_lattice(&m, &target) else {
        return Ok(GenFun::zero(d));
    };
    let basis = IntMatrix::from_cols(sol.kernel.clone());
    let free = basis.cols();

    // Common exponent of a matched pair: p_1 + sum_i mu_i a_i, with mu
    // the first k1 coordinates of xi.
    let offset = {
        let mut p = t1.numerator.clone();
        for (i, a) in t1.denominators.iter().enumerate() {
            p = &p + &a.scale(sol.point.entry(i));
        }
        p
    };
    if free == 0 {
        if sol.point.iter().any(|e| e.is_negative()) {
            return Ok(GenFun::zero(d));
        }
        return Ok(GenFun::from_terms(d, vec![Term::monomial(coeff, offset)]));
    }

    // xi = xi_0 + B g >= 0 cut out the solution polyhedron in g.
    let rows: Vec<(IntVector, Int)> = (0..k1 + k2)
        .map(|i| (-&basis.row(i), sol.point.entry(i).clone()))
        .collect();
    let solutions = Polyhedron::from_rows(free, rows);
    let enumerated = pointed_genfun(&solutions)?;

    // Push through g -> offset + (A_1 B_top) g.
    let mut map_cols = Vec::with_capacity(free);
    for j in 0..free {
        let mut col = IntVector::zeros(d);
        for (i, a) in t1.denominators.iter().enumerate() {
            col = &col + &a.scale(basis.get(i, j));
        }
        map_cols.push(col);
    }
    let mapped = substitute(&enumerated, &MonomialMap::new(d, map_cols))?;
    Ok(mapped.shift(&offset).scale(&coeff))
}

/// Intersection of two lattice-point sets given by their generating
/// functions (both must have 0/1 coefficients).
pub fn intersect(f1: &GenFun, f2: &GenFun) -> Result<GenFun> {
    let d = f1.dim();
    assert_eq!(f2.dim(), d, "intersection of mismatched dimensions");
    let dens: Vec<&IntVector> = f1
        .terms()
        .iter()
        .chain(f2.terms().iter())
        .flat_map(|t| t.denominators.iter())
        .collect();
    let l = expansion_direction(d, &dens)?;
    let mut total = GenFun::zero(d);
    for t1 in f1.terms() {
        let (p1, s1, d1) = reorient(&t1.numerator, &t1.denominators, &l);
        let c1 = if s1 { -t1.coefficient.clone() } else { t1.coefficient.clone() };
        let r1 = Term::new(c1, p1, d1);
        for t2 in f2.terms() {
            let (p2, s2, d2) = reorient(&t2.numerator, &t2.denominators, &l);
            let c2 = if s2 { -t2.coefficient.clone() } else { t2.coefficient.clone() };
            let r2 = Term::new(c2, p2, d2);
            total = total.add(&hadamard(&r1, &r2, &l)?);
        }
    }
    Ok(total)
}

/// Union via inclusion-exclusion.
pub fn union(f1: &GenFun, f2: &GenFun) -> Result<GenFun> {
    Ok(f1.add(f2).sub(&intersect(f1, f2)?))
}

/// Set difference: the first set minus its intersection with the
/// second.
pub fn difference(f1: &GenFun, f2: &GenFun) -> Result<GenFun> {
    Ok(f1.sub(&intersect(f1, f2)?))
}

/// A Boolean expression over indexed input sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Atom(usize),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
}

/// Evaluate a Boolean combination of sets, each given by a generating
/// function with 0/1 coefficients.
pub fn boolean_combine(sets: &[GenFun], expr: &SetExpr) -> Result<GenFun> {
    match expr {
        SetExpr::Atom(i) => sets
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::BadInput(format!("set index {i} out of range"))),
        SetExpr::Union(a, b) => {
            let fa = boolean_combine(sets, a)?;
            let fb = boolean_combine(sets, b)?;
            union(&fa, &fb)
        }
        SetExpr::Intersect(a, b) => {
            let fa = boolean_combine(sets, a)?;
            let fb = boolean_combine(sets, b)?;
            intersect(&fa, &fb)
        }
        SetExpr::Difference(a, b) => {
            let fa = boolean_combine(sets, a)?;
            let fb = boolean_combine(sets, b)?;
            difference(&fa, &fb)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::genfun::count;
    use std::collections::BTreeSet;

    fn iv(vs: &[i64]) -> IntVector {
        IntVector::from_i64(vs)
    }

    fn segment(lo: i64, hi: i64) -> GenFun {
        GenFun::from_terms(
            1,
            vec![
                Term::new(rat(1, 1), iv(&[lo]), vec![iv(&[1])]),
                Term::new(rat(-1, 1), iv(&[hi + 1]), vec![iv(&[1])]),
            ],
        )
    }

    fn members(f: &GenFun, lo: i64, hi: i64) -> BTreeSet<i64> {
        let coeffs = f.expand(&iv(&[lo]), &iv(&[hi])).unwrap();
        for c in coeffs.values() {
            assert_eq!(*c, rat(1, 1), "indicator expected");
        }
        coeffs.keys().map(|k| i64::try_from(k.entry(0)).unwrap()).collect()
    }

    #[test]
    fn test_intersect_segments() {
        let f = intersect(&segment(0, 5), &segment(3, 8)).unwrap();
        assert_eq!(members(&f, -2, 12), (3..=5).collect());
        assert_eq!(count(&f).unwrap(), rat(3, 1));
        // Disjoint segments meet in nothing.
        let g = intersect(&segment(0, 2), &segment(5, 8)).unwrap();
        assert_eq!(count(&g).unwrap(), rat(0, 1));
    }

    #[test]
    fn test_intersect_progressions() {
        // Evens and multiples of three meet in multiples of six.
        let evens = GenFun::from_terms(
            1,
            vec![Term::new(rat(1, 1), iv(&[0]), vec![iv(&[2])])],
        );
        let threes = GenFun::from_terms(
            1,
            vec![Term::new(rat(1, 1), iv(&[0]), vec![iv(&[3])])],
        );
        let f = intersect(&evens, &threes).unwrap();
        let got = members(&f, 0, 24);
        let expect: BTreeSet<i64> = (0..=24).filter(|v| v % 6 == 0).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn test_intersect_shifted_quadrants() {
        // Quadrants based at (0,0) and (2,1) meet in the one at (2,1).
        let q0 = GenFun::from_terms(
            2,
            vec![Term::new(rat(1, 1), iv(&[0, 0]), vec![iv(&[1, 0]), iv(&[0, 1])])],
        );
        let q1 = q0.shift(&iv(&[2, 1]));
        let f = intersect(&q0, &q1).unwrap();
        assert_eq!(
            f.expand(&iv(&[0, 0]), &iv(&[5, 5])).unwrap(),
            q1.expand(&iv(&[0, 0]), &iv(&[5, 5])).unwrap()
        );
    }

    #[test]
    fn test_union_difference() {
        let a = segment(0, 4);
        let b = segment(3, 7);
        let u = union(&a, &b).unwrap();
        assert_eq!(members(&u, -2, 10), (0..=7).collect());
        let d = difference(&a, &b).unwrap();
        assert_eq!(members(&d, -2, 10), (0..=2).collect());
        assert_eq!(count(&u).unwrap(), rat(8, 1));
        assert_eq!(count(&d).unwrap(), rat(3, 1));
    }

    #[test]
    fn test_boolean_expression() {
        // (A u B) \ C over segments.
        let sets = vec![segment(0, 3), segment(5, 8), segment(2, 6)];
        let expr = SetExpr::Difference(
            Box::new(SetExpr::Union(
                Box::new(SetExpr::Atom(0)),
                Box::new(SetExpr::Atom(1)),
            )),
            Box::new(SetExpr::Atom(2)),
        );
        let f = boolean_combine(&sets, &expr).unwrap();
        assert_eq!(members(&f, -2, 12), BTreeSet::from([0, 1, 7, 8]));
        assert!(matches!(
            boolean_combine(&sets, &SetExpr::Atom(9)),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn test_certificate_rejected() {
        let t = Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]);
        // l = (1) pairs positively with the denominator.
        assert!(hadamard(&t, &t, &iv(&[1])).is_err());
        assert!(hadamard(&t, &t, &iv(&[-1])).is_ok());
    }

    #[test]
    fn test_hadamard_monomials() {
        // Bare monomials intersect iff equal.
        let a = Term::monomial(rat(1, 1), iv(&[2, 2]));
        let b = Term::monomial(rat(1, 1), iv(&[2, 2]));
        let c = Term::monomial(rat(1, 1), iv(&[1, 2]));
        let l = iv(&[-1, -2]);
        let ab = hadamard(&a, &b, &l).unwrap();
        assert_eq!(count(&ab).unwrap(), rat(1, 1));
        let ac = hadamard(&a, &c, &l).unwrap();
        assert!(ac.is_zero());
    }

    #[test]
    fn test_factor_growth_bounded() {
        let q0 = GenFun::from_terms(
            2,
            vec![Term::new(rat(1, 1), iv(&[0, 0]), vec![iv(&[1, 0]), iv(&[0, 1])])],
        );
        let q1 = q0.shift(&iv(&[1, 1]));
        let f = intersect(&q0, &q1).unwrap();
        // At most twice the factor count of the inputs.
        assert!(f.max_factors() <= 4);
    }
}
