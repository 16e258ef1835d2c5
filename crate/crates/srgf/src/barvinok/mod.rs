//! Signed unimodular cone decomposition and vertex-cone summation.
//!
//! The generating function of a pointed polyhedron is the sum over its
//! vertices of the generating functions of their tangent cones.  Each
//! tangent cone is handled through its dual: the dual cone is
//! triangulated, every simplicial piece is recursively split against a
//! short lattice vector until all pieces are unimodular, and the
//! pieces are dualized back.  Working on the dual side is what lets
//! the recursion (and the triangulation) ignore lower-dimensional
//! pieces — they dualize to cones containing lines, which enumerate to
//! zero — so the final signed sum is exact, and its length stays
//! polynomial in the bit size of the input.

use crate::exactmath::{
    lll_reduce, rat_ceil, rat_int, rat_kernel, rat_rank, rat_solve_square, Int, IntMatrix,
    IntVector, Rational,
};
use crate::genfun::{reorient, substitute, GenFun, MonomialMap, Term};
use crate::polyhedra::{for_each_combination, Polyhedron};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// A full-dimensional simplicial unimodular cone with an orientation
/// sign, one summand of a signed decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCone {
    pub sign: i64,
    pub generators: Vec<IntVector>,
}

/// Decompose the pointed full-dimensional cone spanned by `rays` into
/// signed unimodular cones whose indicators sum to the cone's,
/// modulo nothing: all discarded pieces cancel exactly after
/// dualizing back.
pub fn decompose_unimodular(rays: &[IntVector]) -> Result<Vec<SignedCone>> {
    if rays.is_empty() {
        return Err(Error::BadCone("cone without generators".into()));
    }
    let dim = rays[0].dim();
    let mut rays: Vec<IntVector> = rays
        .iter()
        .map(|r| {
            r.primitive()
                .ok_or_else(|| Error::ZeroVector("zero cone generator".into()))
        })
        .collect::<Result<_>>()?;
    rays.sort();
    rays.dedup();
    let dual = dual_generators(&rays, dim)?;
    let mut out = Vec::new();
    for cell in triangulate_rays(&dual) {
        let gens: Vec<IntVector> = cell.iter().map(|&i| dual[i].clone()).collect();
        for (sign, piece) in split_to_unimodular(gens)? {
            // Dualize the unimodular piece back to the primal side.
            let w = IntMatrix::from_cols(piece);
            let det = w.det();
            let adj = w.adjugate().expect("unimodular piece is nonsingular");
            let generators: Vec<IntVector> = (0..dim)
                .map(|i| {
                    let row = adj.row(i);
                    if det.is_negative() {
                        -&row
                    } else {
                        row
                    }
                })
                .collect();
            out.push(SignedCone { sign, generators });
        }
    }
    Ok(out)
}

/// Generators of the dual cone (the facet normals), assuming the
/// primal cone is pointed and full-dimensional.
fn dual_generators(rays: &[IntVector], dim: usize) -> Result<Vec<IntVector>> {
    if dim == 1 {
        // A pointed full-dimensional cone on the line is a half-line,
        // and it is its own dual.
        return Ok(vec![rays[0].clone()]);
    }
    if rays.len() == dim {
        let v = IntMatrix::from_cols(rays.to_vec());
        let det = v.det();
        if det.is_zero() {
            return Err(Error::BadCone("cone is not full-dimensional".into()));
        }
        let adj = v.adjugate().expect("nonsingular");
        let mut out = Vec::with_capacity(dim);
        for i in 0..dim {
            let row = if det.is_negative() { -&adj.row(i) } else { adj.row(i) };
            out.push(row.primitive().expect("adjugate row of a nonsingular matrix"));
        }
        return Ok(out);
    }
    let rat_rows: Vec<Vec<Rational>> = rays.iter().map(|r| r.to_rat()).collect();
    let mut normals: BTreeSet<IntVector> = BTreeSet::new();
    for_each_combination(rays.len(), dim - 1, &mut |subset| {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| rat_rows[i].clone()).collect();
        if rat_rank(&rows) != dim - 1 {
            return;
        }
        let kernel = rat_kernel(&rows);
        debug_assert_eq!(kernel.len(), 1, "full-dimensional cone");
        let Some(n) = crate::exactmath::primitive_from_rat(&kernel[0]) else {
            return;
        };
        let mut pos = false;
        let mut neg = false;
        for r in rays {
            let d = n.dot(r);
            pos |= d.is_positive();
            neg |= d.is_negative();
        }
        match (pos, neg) {
            (true, false) => {
                normals.insert(n);
            }
            (false, true) => {
                normals.insert(-&n);
            }
            _ => {}
        }
    });
    if normals.len() < dim {
        return Err(Error::BadCone("cone is not full-dimensional".into()));
    }
    Ok(normals.into_iter().collect())
}

/// Lexicographic pulling triangulation of a set of generators, given
/// and returned as index sets; each cell is simplicial of the ambient
/// rank.  The first generator is joined to the recursively
/// triangulated facets that avoid it.
fn triangulate_rays(rays: &[IntVector]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..rays.len()).collect();
    let mut out = Vec::new();
    pull(&idx, rays, &mut out);
    out
}

fn pull(idx: &[usize], rays: &[IntVector], out: &mut Vec<Vec<usize>>) {
    let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| rays[i].to_rat()).collect();
    let r = rat_rank(&rows);
    if idx.len() == r {
        out.push(idx.to_vec());
        return;
    }
    let v0 = idx[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for_each_combination(idx.len(), r - 1, &mut |subset| {
        let srows: Vec<Vec<Rational>> = subset.iter().map(|&j| rows[j].clone()).collect();
        if rat_rank(&srows) != r - 1 {
            return;
        }
        // A supporting normal acts through the span only; take any
        // kernel vector with a nonzero pairing.
        let kernel = rat_kernel(&srows);
        let mut dots: Option<Vec<Rational>> = None;
        for n in &kernel {
            let ds: Vec<Rational> = rows
                .iter()
                .map(|row| {
                    row.iter().zip(n.iter()).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect();
            if ds.iter().any(|d| !d.is_zero()) {
                dots = Some(ds);
                break;
            }
        }
        let Some(dots) = dots else { return };
        let pos = dots.iter().any(|d| d.is_positive());
        let neg = dots.iter().any(|d| d.is_negative());
        if pos && neg {
            return;
        }
        let tight: Vec<usize> = idx
            .iter()
            .zip(dots.iter())
            .filter(|(_, d)| d.is_zero())
            .map(|(&i, _)| i)
            .collect();
        if tight.contains(&v0) {
            return;
        }
        facets.insert(tight);
    });
    for tight in facets {
        let mut cells = Vec::new();
        pull(&tight, rays, &mut cells);
        for mut cell in cells {
            cell.insert(0, v0);
            out.push(cell);
        }
    }
}

/// Barvinok's recursion on one simplicial full-dimensional cone: split
/// against a short vector until every piece is unimodular.
/// Lower-dimensional pieces are dropped (their duals contain lines).
fn split_to_unimodular(gens: Vec<IntVector>) -> Result<Vec<(i64, Vec<IntVector>)>> {
    let dim = gens.len();
    let mut out = Vec::new();
    let mut stack = vec![(1i64, gens)];
    let mut steps = 0usize;
    while let Some((sign, g)) = stack.pop() {
        steps += 1;
        if steps > 200_000 {
            return Err(Error::SearchExhausted(
                "cone decomposition exceeded its step cap".into(),
            ));
        }
        let v = IntMatrix::from_cols(g.clone());
        let det = v.det();
        if det.is_zero() {
            return Err(Error::BadCone("simplicial piece lost full rank".into()));
        }
        if det.abs().is_one() {
            out.push((sign, g));
            continue;
        }
        let adj = v.adjugate().expect("nonsingular");
        // Points of the lambda-lattice det * V^{-1} Z^dim are integer
        // combinations of the adjugate's columns; a reduced basis
        // keeps the search box tiny.
        let cols: Vec<IntVector> = (0..dim).map(|j| adj.col(j)).collect();
        let reduced = lll_reduce(&cols)?;
        let Some(r) = shortest_combination(&reduced, &det) else {
            return Err(Error::SearchExhausted(
                "no short vector inside the search box".into(),
            ));
        };
        // The new generator in primal coordinates: w = V r / det.
        let vr = v.mul_vec(&r);
        let w = IntVector::new(
            vr.iter()
                .map(|e| {
                    let (q, rem) = num_integer::Integer::div_rem(e, &det);
                    debug_assert!(rem.is_zero(), "lattice point recovers integrally");
                    q
                })
                .collect(),
        );
        // Orient so that at least one coordinate of lambda = r/det is
        // positive.
        let lambda: Vec<Rational> = r.iter().map(|e| Rational::new(e.clone(), det.clone())).collect();
        let (w, lambda) = if lambda.iter().any(|l| l.is_positive()) {
            (w, lambda)
        } else {
            (-&w, lambda.into_iter().map(|l| -l).collect())
        };
        for (i, li) in lambda.iter().enumerate() {
            if li.is_zero() {
                continue;
            }
            let mut child = g.clone();
            child[i] = w.clone();
            let child_sign = if li.is_positive() { sign } else { -sign };
            stack.push((child_sign, child));
        }
    }
    Ok(out)
}

/// Smallest max-coordinate nonzero combination of the reduced basis
/// within an expanding coefficient box, accepted only below the
/// current index (`max |r_i| < |det|`, i.e. `max |lambda_i| < 1`).
fn shortest_combination(basis: &[IntVector], det: &Int) -> Option<IntVector> {
    let dim = basis.len();
    let bound_limit = 4i64;
    let goal = det.abs();
    for bound in 1..=bound_limit {
        let mut best: Option<(Int, IntVector)> = None;
        let mut coeff = vec![-bound; dim];
        'walk: loop {
            let mut r = IntVector::zeros(basis[0].dim());
            for (c, b) in coeff.iter().zip(basis.iter()) {
                if *c != 0 {
                    r = &r + &b.scale(&Int::from(*c));
                }
            }
            if !r.is_zero() {
                // Canonical sign: first nonzero coordinate positive.
                let flip = r.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative());
                let r = if flip { -&r } else { r };
                let score = r.norm_inf();
                if score < goal {
                    let better = match &best {
                        None => true,
                        Some((s, v)) => score < *s || (score == *s && r < *v),
                    };
                    if better {
                        best = Some((score, r));
                    }
                }
            }
            for slot in 0..dim {
                coeff[slot] += 1;
                if coeff[slot] <= bound {
                    continue 'walk;
                }
                coeff[slot] = -bound;
            }
            break;
        }
        if let Some((_, r)) = best {
            return Some(r);
        }
    }
    None
}

/// The term contributed by one signed unimodular cone: the numerator
/// exponent is the unique lattice point of the fundamental
/// parallelepiped, found by rounding the apex up in generator
/// coordinates.
pub fn unimodular_cone_term(sign: i64, apex: &[Rational], generators: &[IntVector]) -> Term {
    let dim = apex.len();
    debug_assert_eq!(generators.len(), dim);
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|i| generators.iter().map(|g| rat_int(g.entry(i))).collect())
        .collect();
    let beta = rat_solve_square(&rows, apex).expect("unimodular generators span");
    let mut p = IntVector::zeros(dim);
    for (g, b) in generators.iter().zip(beta.iter()) {
        p = &p + &g.scale(&rat_ceil(b));
    }
    Term::new(rat_int(&Int::from(sign)), p, generators.to_vec())
}

/// Generating function of all lattice points of a polytope.
pub fn polytope_genfun(p: &Polyhedron) -> Result<GenFun> {
    genfun_of(p, false)
}

/// Generating function of a pointed polyhedron, bounded or not.
pub fn pointed_genfun(p: &Polyhedron) -> Result<GenFun> {
    genfun_of(p, true)
}

fn genfun_of(p: &Polyhedron, allow_unbounded: bool) -> Result<GenFun> {
    let d = p.ambient_dim();
    if p.is_empty() {
        return Ok(GenFun::zero(d));
    }
    if d == 0 {
        return Ok(GenFun::one(0));
    }
    let Some(chart) = p.lattice_chart()? else {
        // The affine hull carries no lattice points at all.
        return Ok(GenFun::zero(d));
    };
    if chart.basis.cols() == d {
        return vertex_sum(p, allow_unbounded);
    }
    // Lower-dimensional: enumerate in chart coordinates, then push the
    // result through the (injective) chart monomial map.
    let inner = genfun_of(&chart.body, allow_unbounded)?;
    let mapped = substitute(&inner, &MonomialMap::from_matrix(&chart.basis))?;
    Ok(mapped.shift(&chart.origin))
}

fn vertex_sum(p: &Polyhedron, allow_unbounded: bool) -> Result<GenFun> {
    let d = p.ambient_dim();
    let vertices = if allow_unbounded { p.vertices_pointed()? } else { p.vertices()? };
    let mut terms = Vec::new();
    for v in &vertices {
        let cone = p.tangent_cone(v)?;
        for piece in decompose_unimodular(&cone.generators)? {
            terms.push(unimodular_cone_term(piece.sign, &cone.apex, &piece.generators));
        }
    }
    orient_to_region(p, GenFun::from_terms(d, terms))
}

/// Rewrite a vertex sum so all denominators pair strictly negatively
/// with one common direction chosen strictly negative on the recession
/// cone.
///
/// The cone pieces of a vertex sum converge in different regions, so
/// the term list is a priori only a sum of rational functions.  The
/// set's own series converges wherever a direction is strictly
/// negative on the recession cone, and rewriting every denominator
/// against one such direction makes the written form expand, as
/// written, to exactly the enumerated set.  The direction is searched
/// deterministically: the sum of the constraint rows is strictly
/// negative on the (pointed) recession cone, and a moment-curve
/// perturbation restores nonzero pairings; both properties are checked
/// exactly, by dot products and by bounding the recession cone against
/// the candidate's nonnegative side.
fn orient_to_region(p: &Polyhedron, f: GenFun) -> Result<GenFun> {
    let d = p.ambient_dim();
    let dens: Vec<&IntVector> = f.terms().iter().flat_map(|t| t.denominators.iter()).collect();
    if dens.is_empty() {
        return Ok(f);
    }
    let mut row_sum = IntVector::zeros(d);
    for (a, _) in p.row_pairs() {
        row_sum = &row_sum + &a;
    }
    let recession_rows: Vec<(IntVector, Int)> = p
        .row_pairs()
        .into_iter()
        .map(|(a, _)| (a, Int::zero()))
        .collect();
    let mut weight = Int::zero();
    for _ in 0..44 {
        for t in 1..=10i64 {
            let mut l = row_sum.scale(&weight);
            let mut power = Int::one();
            for i in 0..d {
                let e = l.entry(i) - &power;
                l.set_entry(i, e);
                power *= Int::from(t);
            }
            if dens.iter().any(|a| l.dot(a).is_zero()) {
                continue;
            }
            let mut rows = recession_rows.clone();
            rows.push((-&l, Int::zero()));
            if !Polyhedron::from_rows(d, rows).is_bounded() {
                continue;
            }
            let terms = f
                .terms()
                .iter()
                .map(|term| {
                    let (q, s, ds) = reorient(&term.numerator, &term.denominators, &l);
                    let c = if s { -term.coefficient.clone() } else { term.coefficient.clone() };
                    Term::new(c, q, ds)
                })
                .collect();
            return Ok(GenFun::from_terms(d, terms));
        }
        weight = if weight.is_zero() { Int::one() } else { &weight * &Int::from(2) };
    }
    Err(Error::SearchExhausted(
        "no common writing direction for the vertex sum".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::genfun::count;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(vs: &[i64]) -> IntVector {
        IntVector::from_i64(vs)
    }

    /// Compare a cone's decomposition against brute enumeration over a
    /// box, through the generating-function expansion.
    fn check_cone(rays: &[IntVector], lo: &[i64], hi: &[i64], rows: Vec<(IntVector, Int)>) {
        let dim = rays[0].dim();
        let pieces = decompose_unimodular(rays).unwrap();
        let apex = vec![Rational::zero(); dim];
        let terms: Vec<Term> = pieces
            .iter()
            .map(|c| unimodular_cone_term(c.sign, &apex, &c.generators))
            .collect();
        let cone_body = Polyhedron::from_rows(dim, rows);
        let f = orient_to_region(&cone_body, GenFun::from_terms(dim, terms)).unwrap();
        let got = f.expand(&iv(lo), &iv(hi)).unwrap();
        let clipped = cone_body.and_rows(&Polyhedron::from_rows(dim, box_rows(dim, lo, hi)));
        let expect = oracle::enumerate_lattice_points(clipped.matrix(), clipped.rhs()).unwrap();
        let members: BTreeSet<IntVector> = got.keys().cloned().collect();
        let expected: BTreeSet<IntVector> = expect.iter().cloned().collect();
        assert_eq!(members, expected);
        assert!(got.values().all(|c| *c == rat(1, 1)));
    }

    fn box_rows(dim: usize, lo: &[i64], hi: &[i64]) -> Vec<(IntVector, Int)> {
        let mut rows = Vec::new();
        for i in 0..dim {
            let mut up = IntVector::zeros(dim);
            up.set_entry(i, Int::one());
            rows.push((up, Int::from(hi[i])));
            let mut down = IntVector::zeros(dim);
            down.set_entry(i, -Int::one());
            rows.push((down, Int::from(-lo[i])));
        }
        rows
    }

    #[test]
    fn test_unimodular_cone_terms() {
        // Quadrant at the origin.
        let t = unimodular_cone_term(
            1,
            &[rat(0, 1), rat(0, 1)],
            &[iv(&[1, 0]), iv(&[0, 1])],
        );
        assert_eq!(t.numerator, iv(&[0, 0]));
        assert_eq!(t.denominators, vec![iv(&[0, 1]), iv(&[1, 0])]);
        // Fractional apex rounds up to the interior lattice corner.
        let t = unimodular_cone_term(
            1,
            &[rat(1, 2), rat(1, 2)],
            &[iv(&[1, 0]), iv(&[0, 1])],
        );
        assert_eq!(t.numerator, iv(&[1, 1]));
        // Integral negative apex stays put.
        let t = unimodular_cone_term(
            1,
            &[rat(-1, 1), rat(0, 1)],
            &[iv(&[1, 0]), iv(&[0, 1])],
        );
        assert_eq!(t.numerator, iv(&[-1, 0]));
    }

    #[test]
    fn test_decompose_index_two() {
        // cone((1,0),(1,2)) = { x >= 0, 0 <= y <= 2x }.
        check_cone(
            &[iv(&[1, 0]), iv(&[1, 2])],
            &[0, 0],
            &[5, 5],
            vec![
                (iv(&[0, -1]), Int::zero()),
                (iv(&[-2, 1]), Int::zero()),
            ],
        );
    }

    #[test]
    fn test_decompose_index_five() {
        // cone((2,1),(1,3)), determinant 5.
        check_cone(
            &[iv(&[2, 1]), iv(&[1, 3])],
            &[0, 0],
            &[6, 6],
            vec![
                (iv(&[1, -2]), Int::zero()),
                (iv(&[-3, 1]), Int::zero()),
            ],
        );
    }

    #[test]
    fn test_decompose_non_simplicial() {
        // Four rays in the plane: cone((1,0),(2,1),(1,2),(0,1)) is just
        // the quadrant hull of its extremes, triangulated internally.
        check_cone(
            &[iv(&[1, 0]), iv(&[2, 1]), iv(&[1, 2]), iv(&[0, 1])],
            &[0, 0],
            &[4, 4],
            vec![
                (iv(&[0, -1]), Int::zero()),
                (iv(&[-1, 0]), Int::zero()),
            ],
        );
    }

    #[test]
    fn test_decompose_three_dim() {
        // cone((1,0,0),(0,1,0),(1,1,3)): index 3.
        check_cone(
            &[iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 3])],
            &[0, 0, 0],
            &[4, 4, 4],
            vec![
                (iv(&[0, 0, -1]), Int::zero()),
                (iv(&[-3, 0, 1]), Int::zero()),
                (iv(&[0, -3, 1]), Int::zero()),
            ],
        );
    }

    #[test]
    fn test_polylog_depth() {
        // The number of unimodular pieces grows with log(index), not
        // with the index itself.
        let n = 1i64 << 10;
        let pieces = decompose_unimodular(&[iv(&[1, 0]), iv(&[1, n])]).unwrap();
        assert!(
            pieces.len() <= 40,
            "expected a short decomposition, got {} pieces",
            pieces.len()
        );
        let smaller = decompose_unimodular(&[iv(&[1, 0]), iv(&[1, n >> 5])]).unwrap();
        assert!(smaller.len() <= pieces.len() + 10);
    }

    #[test]
    fn test_square_genfun() {
        let p = Polyhedron::cube(&iv(&[0, 0]), &iv(&[3, 3]));
        let f = polytope_genfun(&p).unwrap();
        assert_eq!(count(&f).unwrap(), rat(16, 1));
        let got = f.expand(&iv(&[-1, -1]), &iv(&[4, 4])).unwrap();
        assert_eq!(got.len(), 16);
        assert!(got.values().all(|c| *c == rat(1, 1)));
    }

    #[test]
    fn test_simplex_genfun_count() {
        // 3 x1 + 5 x2 <= 20 in the quadrant.
        let p = Polyhedron::from_rows(
            2,
            vec![
                (iv(&[3, 5]), Int::from(20)),
                (iv(&[-1, 0]), Int::zero()),
                (iv(&[0, -1]), Int::zero()),
            ],
        );
        let f = polytope_genfun(&p).unwrap();
        let pts = oracle::enumerate_lattice_points(p.matrix(), p.rhs()).unwrap();
        assert_eq!(count(&f).unwrap(), rat(pts.len() as i64, 1));
    }

    #[test]
    fn test_translate_covariance() {
        let p = Polyhedron::from_rows(
            2,
            vec![
                (iv(&[3, 5]), Int::from(20)),
                (iv(&[-1, 0]), Int::zero()),
                (iv(&[0, -1]), Int::zero()),
            ],
        );
        let t = iv(&[2, -3]);
        let shifted_rows: Vec<(IntVector, Int)> = p
            .row_pairs()
            .into_iter()
            .map(|(a, b)| {
                let off = a.dot(&t);
                (a, b + off)
            })
            .collect();
        let q = Polyhedron::from_rows(2, shifted_rows);
        let f = polytope_genfun(&p).unwrap();
        let g = polytope_genfun(&q).unwrap();
        assert_eq!(
            f.shift(&t).expand(&iv(&[-5, -5]), &iv(&[12, 12])).unwrap(),
            g.expand(&iv(&[-5, -5]), &iv(&[12, 12])).unwrap()
        );
    }

    #[test]
    fn test_lower_dimensional_segment() {
        // The diagonal from (0,0) to (3,3).
        let p = Polyhedron::from_rows(
            2,
            vec![
                (iv(&[1, -1]), Int::zero()),
                (iv(&[-1, 1]), Int::zero()),
                (iv(&[1, 0]), Int::from(3)),
                (iv(&[-1, 0]), Int::zero()),
            ],
        );
        let f = polytope_genfun(&p).unwrap();
        assert_eq!(count(&f).unwrap(), rat(4, 1));
        let got = f.expand(&iv(&[0, 0]), &iv(&[3, 3])).unwrap();
        let expect: BTreeSet<IntVector> =
            (0..=3).map(|i| iv(&[i, i])).collect();
        assert_eq!(got.keys().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn test_hull_without_lattice_points() {
        // 2x = 1: no lattice points anywhere on the hull.
        let p = Polyhedron::from_rows(
            1,
            vec![
                (iv(&[2]), Int::one()),
                (iv(&[-2]), -Int::one()),
            ],
        );
        let f = polytope_genfun(&p).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn test_empty_polytope() {
        let p = Polyhedron::from_rows(
            1,
            vec![(iv(&[1]), Int::zero()), (iv(&[-1]), Int::from(-1))],
        );
        assert!(polytope_genfun(&p).unwrap().is_zero());
    }

    #[test]
    fn test_pointed_quadrant() {
        let p = Polyhedron::from_rows(
            2,
            vec![
                (iv(&[-1, 0]), Int::zero()),
                (iv(&[0, -1]), Int::zero()),
            ],
        );
        let f = pointed_genfun(&p).unwrap();
        assert_eq!(f.terms().len(), 1);
        let t = &f.terms()[0];
        assert_eq!(t.coefficient, rat(1, 1));
        assert_eq!(t.numerator, iv(&[0, 0]));
        assert_eq!(t.denominators, vec![iv(&[0, 1]), iv(&[1, 0])]);
        // Unbounded input is rejected without the pointed entry point.
        assert!(polytope_genfun(&p).is_err());
    }

    #[test]
    fn test_random_polytopes_against_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        let mut done = 0;
        while done < 12 {
            let dim = rng.gen_range(2..=3);
            let mut rows = Vec::new();
            for i in 0..dim {
                let mut up = IntVector::zeros(dim);
                up.set_entry(i, Int::one());
                rows.push((up, Int::from(rng.gen_range(2..=6i64))));
                let mut down = IntVector::zeros(dim);
                down.set_entry(i, -Int::one());
                rows.push((down, Int::from(rng.gen_range(0..=3i64))));
            }
            for _ in 0..2 {
                let a = IntVector::new(
                    (0..dim).map(|_| Int::from(rng.gen_range(-3..=3i64))).collect(),
                );
                if a.is_zero() {
                    continue;
                }
                rows.push((a, Int::from(rng.gen_range(1..=12i64))));
            }
            let p = Polyhedron::from_rows(dim, rows);
            let pts = oracle::enumerate_lattice_points(p.matrix(), p.rhs()).unwrap();
            let f = polytope_genfun(&p).unwrap();
            assert_eq!(
                count(&f).unwrap(),
                rat(pts.len() as i64, 1),
                "count mismatch on sample {done}"
            );
            done += 1;
        }
    }
}
