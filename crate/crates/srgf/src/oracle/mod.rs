//! Independent brute-force oracles for cross-validation.
//!
//! Everything here recomputes answers from first principles — direct
//! enumeration, dynamic programming, pairwise decomposition checks — so
//! the tests can compare pipeline output against an implementation that
//! shares no geometry code with it.  Only `exactmath` scalars and the
//! basic vector/matrix containers are reused.  Enumeration is guarded by
//! a safety cap (default `10^7` candidate points) overridable through
//! the `SRGF_ORACLE_CAP` environment variable.

use crate::exactmath::{rat_ceil, rat_floor, rat_int, Int, IntMatrix, IntVector, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A finite set of integer points with set algebra, the oracle-side
/// stand-in for a generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<IntVector>,
}

impl PointSet {
    pub fn new(dim: usize) -> Self {
        PointSet {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn from_points(dim: usize, pts: impl IntoIterator<Item = IntVector>) -> Self {
        let mut s = Self::new(dim);
        for p in pts {
            assert_eq!(p.dim(), dim, "point of wrong dimension");
            s.points.insert(p);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &IntVector) -> bool {
        self.points.contains(p)
    }

    pub fn insert(&mut self, p: IntVector) {
        assert_eq!(p.dim(), self.dim);
        self.points.insert(p);
    }

    pub fn iter(&self) -> impl Iterator<Item = &IntVector> {
        self.points.iter()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.dim, other.dim);
        PointSet {
            dim: self.dim,
            points: self.points.union(&other.points).cloned().collect(),
        }
    }

    pub fn intersect(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.dim, other.dim);
        PointSet {
            dim: self.dim,
            points: self.points.intersection(&other.points).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.dim, other.dim);
        PointSet {
            dim: self.dim,
            points: self.points.difference(&other.points).cloned().collect(),
        }
    }

    pub fn translate(&self, by: &IntVector) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p + by).collect(),
        }
    }

    /// Image under an integer linear map (rows of `t` are functionals).
    pub fn image(&self, t: &IntMatrix) -> PointSet {
        let mut out = PointSet::new(t.rows());
        for p in &self.points {
            out.points.insert(t.mul_vec(p));
        }
        out
    }

    /// Keep, per fiber of the first `k` coordinates, only the points
    /// minimizing the last coordinate (input dimension must be `k + 1`).
    pub fn fiber_minima(&self, k: usize) -> PointSet {
        assert_eq!(self.dim, k + 1);
        let mut best: BTreeMap<Vec<Int>, Int> = BTreeMap::new();
        for p in &self.points {
            let key: Vec<Int> = p.entries()[..k].to_vec();
            let val = p.entry(k).clone();
            best.entry(key)
                .and_modify(|b| {
                    if val < *b {
                        *b = val.clone();
                    }
                })
                .or_insert(val);
        }
        let mut out = PointSet::new(self.dim);
        for (key, val) in best {
            let mut e = key;
            e.push(val);
            out.points.insert(IntVector::new(e));
        }
        out
    }

    /// Exact 0/1 coefficient table over an inclusive box, for comparing
    /// against term-wise expansions.
    pub fn indicator_in_box(&self, lo: &IntVector, hi: &IntVector) -> BTreeMap<IntVector, Int> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            let inside = (0..self.dim)
                .all(|i| p.entry(i) >= lo.entry(i) && p.entry(i) <= hi.entry(i));
            if inside {
                out.insert(p.clone(), Int::one());
            }
        }
        out
    }
}

/// Enumeration safety cap; `SRGF_ORACLE_CAP` overrides the default of
/// ten million candidate points.
pub fn oracle_cap() -> u64 {
    std::env::var("SRGF_ORACLE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000)
}

/// One inequality `a . x <= b` with rational data, the oracle's own
/// representation (deliberately separate from the pipeline's).
#[derive(Clone, Debug)]
struct RatRow {
    a: Vec<Rational>,
    b: Rational,
}

/// Fourier-Motzkin elimination of one variable.  Output rows are
/// canonicalized (scaled so the largest coefficient magnitude is one)
/// and deduplicated, keeping the tightest bound per direction; without
/// this the row count squares with every eliminated variable.
fn fm_eliminate(rows: &[RatRow], var: usize) -> Vec<RatRow> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    let mut push = |a: Vec<Rational>, b: Rational| {
        let (a, b) = match a.iter().map(|v| v.abs()).max() {
            Some(m) if m.is_positive() => {
                (a.iter().map(|v| v / &m).collect(), &b / &m)
            }
            _ => {
                if !b.is_negative() {
                    return; // 0 <= nonnegative: trivially true
                }
                (a, Rational::from_integer(Int::from(-1)))
            }
        };
        out.entry(a)
            .and_modify(|existing| {
                if b < *existing {
                    *existing = b.clone();
                }
            })
            .or_insert(b);
    };
    for r in rows {
        if r.a[var].is_zero() {
            let mut a = r.a.clone();
            a.remove(var);
            push(a, r.b.clone());
        } else if r.a[var].is_positive() {
            pos.push(r);
        } else {
            neg.push(r);
        }
    }
    for p in &pos {
        for n in &neg {
            // p gives an upper bound on x_var, n a lower bound.
            let cp = &p.a[var];
            let cn = &n.a[var]; // negative
            let scale_p = -cn; // positive
            let scale_n = cp.clone(); // positive
            let mut a = Vec::with_capacity(p.a.len() - 1);
            for (i, (ap, an)) in p.a.iter().zip(n.a.iter()).enumerate() {
                if i == var {
                    continue;
                }
                a.push(ap * &scale_p + an * &scale_n);
            }
            let b = &p.b * &scale_p + &n.b * &scale_n;
            push(a, b);
        }
    }
    out.into_iter().map(|(a, b)| RatRow { a, b }).collect()
}

/// Project the system onto a single kept variable by eliminating all the
/// others; returns `None` when the system is infeasible, otherwise the
/// (possibly unbounded) interval of that variable as `(lo, hi)` with
/// `None` meaning unbounded on that side.
fn fm_interval(rows: &[RatRow], keep: usize) -> Option<(Option<Rational>, Option<Rational>)> {
    if rows.is_empty() {
        return Some((None, None));
    }
    let mut sys: Vec<RatRow> = rows.to_vec();
    let mut keep_idx = keep;
    let dim = rows[0].a.len();
    for v in (0..dim).rev() {
        if v == keep {
            continue;
        }
        sys = fm_eliminate(&sys, v);
        if v < keep {
            keep_idx -= 1;
        }
    }
    debug_assert_eq!(keep_idx, 0);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for r in &sys {
        let c = &r.a[0];
        if c.is_zero() {
            if r.b.is_negative() {
                return None; // 0 <= negative: infeasible
            }
        } else if c.is_positive() {
            let bound = &r.b / c;
            if hi.as_ref().map_or(true, |h| bound < *h) {
                hi = Some(bound);
            }
        } else {
            let bound = &r.b / c;
            if lo.as_ref().map_or(true, |l| bound > *l) {
                lo = Some(bound);
            }
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

fn to_rows(a: &IntMatrix, b: &IntVector) -> Vec<RatRow> {
    (0..a.rows())
        .map(|i| RatRow {
            a: a.row(i).to_rat(),
            b: rat_int(b.entry(i)),
        })
        .collect()
}

/// All lattice points of `{x : A x <= b}` by bounding-box enumeration.
///
/// Box bounds come from the oracle's own Fourier-Motzkin elimination.
/// Errors when the system is unbounded along some coordinate or when the
/// box exceeds the safety cap.
pub fn enumerate_lattice_points(a: &IntMatrix, b: &IntVector) -> Result<PointSet> {
    let dim = a.cols();
    let rows = to_rows(a, b);
    if dim == 0 {
        // Zero-dimensional space: the empty tuple is the only candidate.
        let feasible = (0..a.rows()).all(|i| !b.entry(i).is_negative());
        let mut s = PointSet::new(0);
        if feasible {
            s.insert(IntVector::zeros(0));
        }
        return Ok(s);
    }
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for v in 0..dim {
        match fm_interval(&rows, v) {
            None => return Ok(PointSet::new(dim)),
            Some((l, h)) => {
                let l = l.ok_or_else(|| {
                    Error::Unbounded(format!("coordinate {v} unbounded below"))
                })?;
                let h = h.ok_or_else(|| {
                    Error::Unbounded(format!("coordinate {v} unbounded above"))
                })?;
                lo.push(rat_ceil(&l));
                hi.push(rat_floor(&h));
            }
        }
    }
    let mut total = Int::one();
    for v in 0..dim {
        let width: Int = hi[v].clone() - &lo[v] + Int::one();
        if width.is_negative() || width.is_zero() {
            return Ok(PointSet::new(dim));
        }
        total *= width;
    }
    if total > Int::from(oracle_cap()) {
        return Err(Error::EnumerationCap(format!(
            "box of {total} candidates exceeds the oracle cap"
        )));
    }
    let mut out = PointSet::new(dim);
    let mut cursor = lo.clone();
    loop {
        let p = IntVector::new(cursor.clone());
        let feasible = (0..a.rows()).all(|i| a.row(i).dot(&p) <= *b.entry(i));
        if feasible {
            out.points.insert(p);
        }
        // Odometer increment.
        let mut v = 0;
        loop {
            if v == dim {
                return Ok(out);
            }
            cursor[v] += Int::one();
            if cursor[v] <= hi[v] {
                break;
            }
            cursor[v] = lo[v].clone();
            v += 1;
        }
    }
}

/// Lattice points in the relative interior of `{x : A x <= b}`.
///
/// A constraint is an implied equality when the system cannot move off
/// it at all (its minimum over the polyhedron equals its bound); a
/// lattice point is relative-interior when it is tight exactly on the
/// implied equalities.
pub fn relative_interior_points(a: &IntMatrix, b: &IntVector) -> Result<PointSet> {
    let all = enumerate_lattice_points(a, b)?;
    let rows = to_rows(a, b);
    let dim = a.cols();
    // Implied equality for row i: min over P of a_i . x equals b_i.
    // Computed by projecting onto a slack variable s = b_i - a_i . x.
    let mut implied = vec![false; a.rows()];
    for i in 0..a.rows() {
        // System in (x, s): s = b_i - a_i x  plus original rows.
        let mut sys: Vec<RatRow> = Vec::new();
        for r in &rows {
            let mut av = r.a.clone();
            av.push(Rational::zero());
            sys.push(RatRow { a: av, b: r.b.clone() });
        }
        let mut eq1: Vec<Rational> = rows[i].a.clone();
        eq1.push(Rational::one());
        sys.push(RatRow { a: eq1.clone(), b: rows[i].b.clone() });
        let neg: Vec<Rational> = eq1.iter().map(|v| -v).collect();
        sys.push(RatRow { a: neg, b: -rows[i].b.clone() });
        match fm_interval(&sys, dim) {
            None => return Ok(PointSet::new(dim)), // empty polyhedron
            Some((_, h)) => {
                // s ranges within [0, h]; implied equality iff h = 0.
                if let Some(h) = h {
                    if h.is_zero() {
                        implied[i] = true;
                    }
                }
            }
        }
    }
    let mut out = PointSet::new(dim);
    for p in all.iter() {
        let ok = (0..a.rows()).all(|i| {
            let lhs = a.row(i).dot(p);
            if implied[i] {
                lhs == *b.entry(i)
            } else {
                lhs < *b.entry(i)
            }
        });
        if ok {
            out.points.insert(p.clone());
        }
    }
    Ok(out)
}

/// Membership table for the numerical semigroup generated by `gens`:
/// `table[v]` is true iff `v` is a nonnegative integer combination.
pub fn semigroup_membership(gens: &[u64], upto: usize) -> Vec<bool> {
    let mut table = vec![false; upto + 1];
    table[0] = true;
    for v in 1..=upto {
        for &g in gens {
            let g = g as usize;
            if g <= v && table[v - g] {
                table[v] = true;
                break;
            }
        }
    }
    table
}

/// Frobenius number by dynamic programming: the largest integer not in
/// the semigroup, or `None` when every nonnegative integer is (i.e. some
/// generator is 1).  Requires gcd of the generators to be 1.
pub fn frobenius_dp(gens: &[u64]) -> Option<u64> {
    assert!(!gens.is_empty());
    if gens.contains(&1) {
        return None;
    }
    let min = *gens.iter().min().unwrap();
    let max = *gens.iter().max().unwrap();
    // Classical bound: the Frobenius number is below min * max.
    let bound = (min * max) as usize;
    let table = semigroup_membership(gens, bound);
    (0..=bound).rev().find(|&v| !table[v]).map(|v| v as u64)
}

/// Number of gaps (non-members) of the semigroup, by DP.
pub fn count_gaps_dp(gens: &[u64]) -> u64 {
    if gens.contains(&1) {
        return 0;
    }
    let min = *gens.iter().min().unwrap();
    let max = *gens.iter().max().unwrap();
    let bound = (min * max) as usize;
    let table = semigroup_membership(gens, bound);
    table.iter().filter(|&&m| !m).count() as u64
}

/// Brute-force Hilbert basis of the simplicial cone spanned by the
/// columns of `gens`: lattice points of the half-open fundamental domain
/// `{sum alpha_i u_i : alpha in [0,1]^d}` minus zero, with decomposable
/// points (sums of two other nonzero points of the parallelepiped)
/// removed.
pub fn brute_hilbert_basis(gens: &IntMatrix) -> Result<Vec<IntVector>> {
    let d = gens.rows();
    assert_eq!(gens.cols(), d, "need d independent generators in Z^d");
    let inv = gens
        .inverse()
        .ok_or_else(|| Error::DependentInput("cone generators".into()))?;
    // Bounding box of the parallelepiped from its corners.
    let mut lo = vec![Int::zero(); d];
    let mut hi = vec![Int::zero(); d];
    for j in 0..d {
        for i in 0..d {
            let e = gens.get(i, j);
            if e.is_negative() {
                lo[i] += e;
            } else {
                hi[i] += e;
            }
        }
    }
    let mut total = Int::one();
    for i in 0..d {
        total *= hi[i].clone() - &lo[i] + Int::one();
    }
    if total > Int::from(oracle_cap()) {
        return Err(Error::EnumerationCap(format!(
            "parallelepiped box of {total} candidates exceeds the oracle cap"
        )));
    }
    let mut pts: BTreeSet<IntVector> = BTreeSet::new();
    let mut cursor = lo.clone();
    'outer: loop {
        let p = IntVector::new(cursor.clone());
        // alpha = U^{-1} p must lie in [0,1]^d.
        let mut inside = true;
        for i in 0..d {
            let mut alpha = Rational::zero();
            for j in 0..d {
                alpha += &inv[i][j] * rat_int(p.entry(j));
            }
            if alpha.is_negative() || alpha > Rational::one() {
                inside = false;
                break;
            }
        }
        if inside && !p.is_zero() {
            pts.insert(p);
        }
        let mut v = 0;
        loop {
            if v == d {
                break 'outer;
            }
            cursor[v] += Int::one();
            if cursor[v] <= hi[v] {
                break;
            }
            cursor[v] = lo[v].clone();
            v += 1;
        }
    }
    let basis: Vec<IntVector> = pts
        .iter()
        .filter(|p| {
            // Decomposable iff p = q + r with q, r nonzero points of the
            // parallelepiped.
            !pts.iter().any(|q| {
                let r = *p - q;
                !r.is_zero() && pts.contains(&r)
            })
        })
        .cloned()
        .collect();
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_enumerate_square() {
        // Unit square [0,1]^2.
        let a = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = IntVector::from_i64(&[1, 0, 1, 0]);
        let s = enumerate_lattice_points(&a, &b).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&IntVector::from_i64(&[0, 0])));
        assert!(s.contains(&IntVector::from_i64(&[1, 1])));
    }

    #[test]
    fn test_enumerate_empty_and_unbounded() {
        let a = IntMatrix::from_i64(&[&[1], &[-1]]);
        let b = IntVector::from_i64(&[0, -1]); // x <= 0 and x >= 1
        assert!(enumerate_lattice_points(&a, &b).unwrap().is_empty());
        let a2 = IntMatrix::from_i64(&[&[-1]]);
        let b2 = IntVector::from_i64(&[0]); // x >= 0 only
        assert!(matches!(
            enumerate_lattice_points(&a2, &b2),
            Err(Error::Unbounded(_))
        ));
    }

    #[test]
    fn test_relative_interior_segment() {
        // Segment from (0,0) to (3,0) embedded in the plane.
        let a = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = IntVector::from_i64(&[3, 0, 0, 0]);
        let relint = relative_interior_points(&a, &b).unwrap();
        assert_eq!(relint.len(), 2); // (1,0) and (2,0)
        assert!(relint.contains(&IntVector::from_i64(&[1, 0])));
        assert!(relint.contains(&IntVector::from_i64(&[2, 0])));
    }

    #[test]
    fn test_frobenius_small() {
        assert_eq!(frobenius_dp(&[3, 5]), Some(7));
        assert_eq!(frobenius_dp(&[2, 3]), Some(1));
        assert_eq!(frobenius_dp(&[1, 4]), None);
        // Chicken McNugget triple.
        assert_eq!(frobenius_dp(&[6, 9, 20]), Some(43));
        assert_eq!(count_gaps_dp(&[3, 5]), 4); // 1, 2, 4, 7
    }

    #[test]
    fn test_fiber_minima() {
        let s = PointSet::from_points(
            2,
            vec![
                IntVector::from_i64(&[0, 2]),
                IntVector::from_i64(&[0, 5]),
                IntVector::from_i64(&[1, 7]),
            ],
        );
        let m = s.fiber_minima(1);
        assert_eq!(m.len(), 2);
        assert!(m.contains(&IntVector::from_i64(&[0, 2])));
        assert!(m.contains(&IntVector::from_i64(&[1, 7])));
    }

    #[test]
    fn test_brute_hilbert_plane_cone() {
        // cone((1,0),(1,2)): basis {(1,0),(1,1),(1,2)}.
        let gens = IntMatrix::from_cols(vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[1, 2]),
        ]);
        let basis = brute_hilbert_basis(&gens).unwrap();
        let expect: Vec<IntVector> = vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[1, 1]),
            IntVector::from_i64(&[1, 2]),
        ];
        assert_eq!(basis, expect);
    }

    #[test]
    fn test_unimodular_cone_hilbert() {
        let gens = IntMatrix::from_cols(vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[0, 1]),
        ]);
        let basis = brute_hilbert_basis(&gens).unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn test_semigroup_membership_table() {
        let t = semigroup_membership(&[3, 5], 10);
        let members: Vec<usize> = (0..=10).filter(|&v| t[v]).collect();
        assert_eq!(members, vec![0, 3, 5, 6, 8, 9, 10]);
    }
}
