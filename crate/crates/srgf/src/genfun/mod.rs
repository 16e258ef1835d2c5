//! Short rational generating functions and their algebra.
//!
//! A set of lattice points is represented as a finite sum of terms
//! `alpha * x^p / (1 - x^{a_1}) .. (1 - x^{a_k})` with nonzero integer
//! exponent vectors `a_j`.  This module owns the data type and the
//! operations that stay inside the representation: term merging, factor
//! padding, Todd polynomials, monomial substitution and specialization,
//! Hadamard products and Boolean operations, interiors and patching,
//! and exact expansion over a finite box.

mod hadamard;
mod patchwork;
mod substitute;
mod text;
mod todd;
mod univariate;

pub use hadamard::{boolean_combine, difference, hadamard, intersect, union, SetExpr};
pub use patchwork::{interior_genfun, patch};
pub use substitute::{count, substitute};
pub use text::parse_genfun;
pub use todd::{todd_polynomials, MultiPoly, ToddExpansion};
pub use univariate::{univariate_equal, univariate_series, univariate_zero};

use crate::exactmath::{primitive_from_rat, rat_int, Int, IntMatrix, IntVector, Rational};
use crate::polyhedra::{LpOutcome, Polyhedron};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One summand `coefficient * x^numerator / prod_j (1 - x^{a_j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rational,
    pub numerator: IntVector,
    /// Denominator exponents, each nonzero, kept sorted.
    pub denominators: Vec<IntVector>,
}

impl Term {
    pub fn new(coefficient: Rational, numerator: IntVector, denominators: Vec<IntVector>) -> Self {
        let mut denominators = denominators;
        for a in &denominators {
            assert!(!a.is_zero(), "denominator exponent must be nonzero");
            assert_eq!(a.dim(), numerator.dim(), "denominator dimension mismatch");
        }
        denominators.sort();
        Term {
            coefficient,
            numerator,
            denominators,
        }
    }

    /// A bare monomial `coefficient * x^p`.
    pub fn monomial(coefficient: Rational, p: IntVector) -> Self {
        Term::new(coefficient, p, Vec::new())
    }

    fn skeleton(&self) -> (&IntVector, &Vec<IntVector>) {
        (&self.numerator, &self.denominators)
    }
}

/// A short rational generating function: a merged list of [`Term`]s over
/// a fixed exponent dimension.  The zero function has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFun {
    dim: usize,
    terms: Vec<Term>,
}

impl GenFun {
    /// The zero function.
    pub fn zero(dim: usize) -> Self {
        GenFun { dim, terms: Vec::new() }
    }

    /// The constant one (the generating function of `{0}`).
    pub fn one(dim: usize) -> Self {
        GenFun::from_terms(
            dim,
            vec![Term::monomial(rat_int(&Int::from(1)), IntVector::zeros(dim))],
        )
    }

    /// Build from terms, merging equal skeletons and dropping zeros.
    pub fn from_terms(dim: usize, terms: Vec<Term>) -> Self {
        for t in &terms {
            assert_eq!(t.numerator.dim(), dim, "term dimension mismatch");
        }
        let mut f = GenFun { dim, terms };
        f.merge();
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest per-term denominator count.
    pub fn max_factors(&self) -> usize {
        self.terms.iter().map(|t| t.denominators.len()).max().unwrap_or(0)
    }

    /// Canonical order plus combination of equal skeletons.
    fn merge(&mut self) {
        self.terms.sort_by(|s, t| s.skeleton().cmp(&t.skeleton()));
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.skeleton() == t.skeleton() => {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coefficient.is_zero());
        self.terms = merged;
    }

    pub fn add(&self, other: &GenFun) -> GenFun {
        assert_eq!(self.dim, other.dim, "sum of mismatched dimensions");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        GenFun::from_terms(self.dim, terms)
    }

    pub fn sub(&self, other: &GenFun) -> GenFun {
        self.add(&other.scale(&rat_int(&Int::from(-1))))
    }

    pub fn scale(&self, by: &Rational) -> GenFun {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coefficient: &t.coefficient * by,
                numerator: t.numerator.clone(),
                denominators: t.denominators.clone(),
            })
            .collect();
        GenFun::from_terms(self.dim, terms)
    }

    /// Multiply by the monomial `x^p` (translate the set by `p`).
    pub fn shift(&self, p: &IntVector) -> GenFun {
        assert_eq!(p.dim(), self.dim);
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coefficient: t.coefficient.clone(),
                numerator: &t.numerator + p,
                denominators: t.denominators.clone(),
            })
            .collect();
        GenFun::from_terms(self.dim, terms)
    }

    /// Exact expansion coefficients for every exponent in the closed box
    /// `[lo, hi]`.
    ///
    /// Each term is expanded as an absolutely convergent geometric
    /// series after reorienting its denominators against a common
    /// certificate direction `l` (so that `<l, a> < 0` throughout); the
    /// series then only moves downhill along `l`, which makes the part
    /// reaching the box finite.
    pub fn expand(&self, lo: &IntVector, hi: &IntVector) -> Result<BTreeMap<IntVector, Rational>> {
        assert_eq!(lo.dim(), self.dim);
        assert_eq!(hi.dim(), self.dim);
        let dens: Vec<&IntVector> = self.terms.iter().flat_map(|t| t.denominators.iter()).collect();
        let l = expansion_direction(self.dim, &dens)?;
        // Smallest value of <l, z> over the box, corner by corner.
        let mut floor = Int::zero();
        for i in 0..self.dim {
            let a = l.entry(i) * lo.entry(i);
            let b = l.entry(i) * hi.entry(i);
            floor += a.clone().min(b);
        }
        let mut out: BTreeMap<IntVector, Rational> = BTreeMap::new();
        let mut budget_guard = 0u64;
        for term in &self.terms {
            let (p, sign, dens) = reorient(&term.numerator, &term.denominators, &l);
            let coeff = if sign { -term.coefficient.clone() } else { term.coefficient.clone() };
            // Depth-first walk over multiplicity vectors; every step adds
            // one denominator vector and strictly decreases <l, .>.
            let mut stack: Vec<(usize, IntVector, Int)> = Vec::new();
            let start_budget = l.dot(&p) - &floor;
            if start_budget.is_negative() {
                continue;
            }
            stack.push((0, p, start_budget));
            while let Some((j, exp, budget)) = stack.pop() {
                budget_guard += 1;
                if budget_guard > 20_000_000 {
                    return Err(Error::EnumerationCap(
                        "box expansion exceeds the step cap".into(),
                    ));
                }
                if j == dens.len() {
                    let inside = (0..self.dim)
                        .all(|i| exp.entry(i) >= lo.entry(i) && exp.entry(i) <= hi.entry(i));
                    if inside {
                        *out.entry(exp).or_insert_with(Rational::zero) += &coeff;
                    }
                    continue;
                }
                // Multiplicity 0 for factor j.
                stack.push((j + 1, exp.clone(), budget.clone()));
                // One more copy of factor j, if the budget allows.
                let next = &exp + &dens[j];
                let drop = -l.dot(&dens[j]);
                debug_assert!(drop.is_positive());
                let rest = budget - drop;
                if !rest.is_negative() {
                    stack.push((j, next, rest));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// Flip denominators to satisfy `<l, a> < 0`, using the identity
/// `x^p / (1 - x^a) = -x^{p-a} / (1 - x^{-a})` per flipped factor.
/// Returns the adjusted numerator exponent, whether the sign flipped,
/// and the reoriented denominators.
pub(crate) fn reorient(
    p: &IntVector,
    dens: &[IntVector],
    l: &IntVector,
) -> (IntVector, bool, Vec<IntVector>) {
    let mut out_p = p.clone();
    let mut sign = false;
    let mut out = Vec::with_capacity(dens.len());
    for a in dens {
        let d = l.dot(a);
        assert!(!d.is_zero(), "certificate direction touches a denominator");
        if d.is_negative() {
            out.push(a.clone());
        } else {
            out_p = &out_p - a;
            sign = !sign;
            out.push(-a);
        }
    }
    (out_p, sign, out)
}

/// A direction against which the given denominator family expands in
/// the region it was written for.
///
/// A sum of terms encodes its set through the geometric series of the
/// denominators as written, so the expansion must happen in a region
/// where all of those series converge: a direction `l` with
/// `<l, a> < 0` for every written exponent `a`.  Such a direction is
/// found exactly by linear programming when one exists.  When the
/// written exponents admit none (as in a vertex sum of a polytope,
/// whose pieces converge in different regions), the function falls
/// back to a direction with nonzero pairings only; the expansion is
/// then region-independent, which is exact precisely because such
/// sums have finite support.
pub(crate) fn expansion_direction(dim: usize, dens: &[&IntVector]) -> Result<IntVector> {
    if !dens.is_empty() {
        let rows: Vec<(IntVector, Int)> = dens
            .iter()
            .map(|a| ((*a).clone(), -Int::one()))
            .collect();
        let region = Polyhedron::from_rows(dim, rows);
        if let LpOutcome::Optimal { point, .. } = region.maximize(&vec![Rational::zero(); dim]) {
            if let Some(l) = primitive_from_rat(&point) {
                return Ok(l);
            }
        }
    }
    generic_direction(dim, dens)
}

/// A deterministic direction with nonzero pairing against every given
/// vector, taken from the moment curve `(1, t, t^2, ...)` with the
/// smallest workable `t >= 1`.
pub(crate) fn generic_direction(dim: usize, vecs: &[&IntVector]) -> Result<IntVector> {
    if dim == 0 {
        // No nonzero vectors exist in dimension zero; any direction works.
        return Ok(IntVector::zeros(0));
    }
    't: for t in 1..=10_000i64 {
        let mut l = IntVector::zeros(dim);
        let mut power = Int::from(1);
        for i in 0..dim {
            l.set_entry(i, power.clone());
            power *= Int::from(t);
        }
        for v in vecs {
            if l.dot(v).is_zero() {
                continue 't;
            }
        }
        return Ok(l);
    }
    Err(Error::SearchExhausted(
        "no generic direction found on the moment curve".into(),
    ))
}

/// A monomial map `x_i = z^{l_i}` from dimension `images.len()` into
/// dimension `target_dim`; exponent vectors push forward linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    target_dim: usize,
    images: Vec<IntVector>,
}

impl MonomialMap {
    pub fn new(target_dim: usize, images: Vec<IntVector>) -> Self {
        for l in &images {
            assert_eq!(l.dim(), target_dim, "image of wrong dimension");
        }
        MonomialMap { target_dim, images }
    }

    /// Map sending each variable to itself.
    pub fn identity(dim: usize) -> Self {
        MonomialMap::new(dim, (0..dim).map(|i| IntVector::unit(dim, i)).collect())
    }

    /// Map from the columns of an integer matrix (`x_i = z^{col_i}`).
    pub fn from_matrix(m: &IntMatrix) -> Self {
        MonomialMap::new(m.rows(), (0..m.cols()).map(|j| m.col(j)).collect())
    }

    /// The all-variables-to-one specialization (target dimension zero).
    pub fn collapse_all(source_dim: usize) -> Self {
        MonomialMap::new(0, vec![IntVector::zeros(0); source_dim])
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[IntVector] {
        &self.images
    }

    /// Image of an exponent vector: `sum_i p_i l_i`.
    pub fn apply(&self, p: &IntVector) -> IntVector {
        assert_eq!(p.dim(), self.images.len());
        let mut out = IntVector::zeros(self.target_dim);
        for (pi, l) in p.iter().zip(self.images.iter()) {
            if !pi.is_zero() {
                out = &out + &l.scale(pi);
            }
        }
        out
    }
}

/// Rewrite a term with at most `k` factors as a sum of terms with
/// exactly `k`, multiplying spare copies of `(1 - x^a)` into the
/// numerator: `x^p / D = (x^p - x^{p+a}) / (D (1 - x^a))`.
pub fn pad_to_k(t: &Term, k: usize) -> Result<Vec<Term>> {
    if t.denominators.len() > k {
        return Err(Error::BadInput(format!(
            "term has {} factors, cannot pad down to {k}",
            t.denominators.len()
        )));
    }
    let dim = t.numerator.dim();
    assert!(dim > 0 || t.denominators.len() == k, "no nonzero vectors in dimension zero");
    let filler = t
        .denominators
        .last()
        .cloned()
        .unwrap_or_else(|| IntVector::unit(dim, 0));
    let mut terms = vec![t.clone()];
    while terms[0].denominators.len() < k {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for s in terms {
            let mut dens = s.denominators.clone();
            dens.push(filler.clone());
            next.push(Term::new(s.coefficient.clone(), s.numerator.clone(), dens.clone()));
            next.push(Term::new(
                -s.coefficient.clone(),
                &s.numerator + &filler,
                dens,
            ));
        }
        terms = next;
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn iv(vs: &[i64]) -> IntVector {
        IntVector::from_i64(vs)
    }

    /// 1/(1-x^a) on the line.
    fn ray(a: i64) -> GenFun {
        GenFun::from_terms(
            1,
            vec![Term::new(rat(1, 1), iv(&[0]), vec![iv(&[a])])],
        )
    }

    #[test]
    fn test_merge_cancels() {
        let t = Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]);
        let n = Term::new(rat(-1, 1), iv(&[0]), vec![iv(&[1])]);
        let f = GenFun::from_terms(1, vec![t, n]);
        assert!(f.is_zero());
    }

    #[test]
    fn test_expand_segment() {
        // (1 - x^3)/(1 - x): points 0, 1, 2.
        let f = GenFun::from_terms(
            1,
            vec![
                Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]),
                Term::new(rat(-1, 1), iv(&[3]), vec![iv(&[1])]),
            ],
        );
        let coeffs = f.expand(&iv(&[0]), &iv(&[5])).unwrap();
        let ones: Vec<i64> = (0..=5)
            .filter(|&v| coeffs.contains_key(&iv(&[v])))
            .collect();
        assert_eq!(ones, vec![0, 1, 2]);
        for (_, c) in coeffs {
            assert_eq!(c, rat(1, 1));
        }
    }

    #[test]
    fn test_expand_quadrant() {
        // 1/((1-x1)(1-x2)): all-ones over [0,2]^2.
        let f = GenFun::from_terms(
            2,
            vec![Term::new(
                rat(1, 1),
                iv(&[0, 0]),
                vec![iv(&[1, 0]), iv(&[0, 1])],
            )],
        );
        let coeffs = f.expand(&iv(&[0, 0]), &iv(&[2, 2])).unwrap();
        assert_eq!(coeffs.len(), 9);
        assert!(coeffs.values().all(|c| *c == rat(1, 1)));
    }

    #[test]
    fn test_expand_downward_ray() {
        // -x^{-1}/(1-x^{-1}) is written for the region expanding toward
        // negative exponents: it encodes -1 at each of {-1, -2, ...}.
        let f = GenFun::from_terms(
            1,
            vec![Term::new(rat(-1, 1), iv(&[-1]), vec![iv(&[-1])])],
        );
        let coeffs = f.expand(&iv(&[-5]), &iv(&[-1])).unwrap();
        assert_eq!(coeffs.len(), 5);
        assert!(coeffs.values().all(|c| *c == rat(-1, 1)));
        // Nothing of it lives among the nonnegative exponents.
        assert!(f.expand(&iv(&[0]), &iv(&[4])).unwrap().is_empty());
    }

    #[test]
    fn test_pad_to_k() {
        // 1/(1-x) padded to two factors: 1/(1-x)^2 - x/(1-x)^2.
        let t = Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]);
        let padded = pad_to_k(&t, 2).unwrap();
        assert_eq!(padded.len(), 2);
        assert!(padded.iter().all(|s| s.denominators.len() == 2));
        let f = GenFun::from_terms(1, padded);
        let g = ray(1);
        assert_eq!(
            f.expand(&iv(&[0]), &iv(&[8])).unwrap(),
            g.expand(&iv(&[0]), &iv(&[8])).unwrap()
        );
        // Already at k: unchanged.
        let t2 = Term::new(rat(1, 1), iv(&[0]), vec![iv(&[1])]);
        assert_eq!(pad_to_k(&t2, 1).unwrap(), vec![t2.clone()]);
        // Constant monomial x^3 to one factor: x^3/(1-x) - x^4/(1-x).
        let m = Term::monomial(rat(1, 1), iv(&[3]));
        let padded = pad_to_k(&m, 1).unwrap();
        let f = GenFun::from_terms(1, padded);
        let expect = GenFun::from_terms(1, vec![Term::monomial(rat(1, 1), iv(&[3]))]);
        assert_eq!(
            f.expand(&iv(&[0]), &iv(&[10])).unwrap(),
            expect.expand(&iv(&[0]), &iv(&[10])).unwrap()
        );
        // Too many factors cannot be padded down.
        assert!(pad_to_k(&t2, 0).is_err());
    }

    #[test]
    fn test_monomial_map() {
        let m = MonomialMap::new(1, vec![iv(&[2]), iv(&[3])]);
        assert_eq!(m.apply(&iv(&[1, 1])), iv(&[5]));
        assert_eq!(m.apply(&iv(&[4, 0])), iv(&[8]));
        let id = MonomialMap::identity(3);
        assert_eq!(id.apply(&iv(&[7, -2, 0])), iv(&[7, -2, 0]));
    }

    #[test]
    fn test_generic_direction() {
        let a = iv(&[1, -1]);
        let b = iv(&[0, 3]);
        let l = generic_direction(2, &[&a, &b]).unwrap();
        assert!(!l.dot(&a).is_zero());
        assert!(!l.dot(&b).is_zero());
    }

    #[test]
    fn test_shift_scale() {
        let f = ray(1).shift(&iv(&[3])).scale(&rat(2, 1));
        let coeffs = f.expand(&iv(&[0]), &iv(&[5])).unwrap();
        assert_eq!(coeffs.get(&iv(&[3])), Some(&rat(2, 1)));
        assert_eq!(coeffs.get(&iv(&[0])), None);
    }
}
