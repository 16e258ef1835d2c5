//! Rational polyhedra in inequality form.
//!
//! A polyhedron is stored as integer data `{x in R^d : A x <= b}`.  On
//! top of the exact simplex core this module provides emptiness and
//! boundedness tests, vertex and face enumeration, tangent cones,
//! directional and lattice widths, implied equalities, projection onto
//! leading coordinates, and re-parametrization of lower-dimensional
//! bodies onto a full-dimensional standard lattice.  Dimensions are
//! small throughout, so the combinatorial enumerations (active sets,
//! candidate directions) stay desk-scale.

mod simplex;

pub use simplex::{lp_maximize, lp_minimize, LpOutcome};

use crate::exactmath::{
    int, primitive_from_rat, rat_ceil, rat_floor, rat_int, rat_kernel, rat_rank,
    rat_solve_square, solve_affine_lattice, Int, IntMatrix, IntVector, Rational,
};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A rational polyhedron `{x in R^d : A x <= b}` with integer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    a: IntMatrix,
    b: IntVector,
}

/// A polyhedral cone with a rational apex and primitive integer ray
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Vec<Rational>,
    pub generators: Vec<IntVector>,
}

/// A nonempty face of a polytope: the subset where the listed rows hold
/// with equality.
#[derive(Clone, Debug)]
pub struct Face {
    /// Rows of the parent tight on the whole face (closed: every row
    /// tight on the face is listed).
    pub active_set: Vec<usize>,
    /// Dimension of the face's affine hull.
    pub dim: usize,
    /// The face itself, as parent rows plus equalities.
    pub polyhedron: Polyhedron,
}

/// Re-parametrization of the lattice points of a polyhedron's affine
/// hull: `x = origin + basis . y` maps chart points `y in Z^r`
/// bijectively onto the hull's lattice points, and `body` is the
/// polyhedron rewritten in chart coordinates, where it becomes
/// full-dimensional.
#[derive(Clone, Debug)]
pub struct LatticeChart {
    pub origin: IntVector,
    pub basis: IntMatrix,
    pub body: Polyhedron,
}

impl LatticeChart {
    /// Map a chart point back to ambient coordinates.
    pub fn to_ambient(&self, y: &IntVector) -> IntVector {
        &self.origin + &self.basis.mul_vec(y)
    }
}

impl Polyhedron {
    pub fn new(a: IntMatrix, b: IntVector) -> Self {
        assert_eq!(a.rows(), b.dim(), "row count mismatch");
        Polyhedron { a, b }
    }

    /// Polyhedron from `(row, bound)` pairs.
    pub fn from_rows(dim: usize, rows: Vec<(IntVector, Int)>) -> Self {
        let mut a = IntMatrix::zeros(rows.len(), dim);
        let mut b = IntVector::zeros(rows.len());
        for (i, (r, v)) in rows.into_iter().enumerate() {
            assert_eq!(r.dim(), dim, "row of wrong dimension");
            for j in 0..dim {
                a.set(i, j, r.entry(j).clone());
            }
            b.set_entry(i, v);
        }
        Polyhedron { a, b }
    }

    /// Axis-aligned box `lo <= x <= hi` (inclusive).
    pub fn cube(lo: &IntVector, hi: &IntVector) -> Self {
        let d = lo.dim();
        assert_eq!(hi.dim(), d);
        let mut rows = Vec::with_capacity(2 * d);
        for j in 0..d {
            rows.push((IntVector::unit(d, j), hi.entry(j).clone()));
            let mut neg = IntVector::zeros(d);
            neg.set_entry(j, int(-1));
            rows.push((neg, -lo.entry(j)));
        }
        Self::from_rows(d, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.a.cols()
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &IntVector {
        &self.b
    }

    /// The polyhedron with `other`'s rows appended (set intersection).
    pub fn and_rows(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let mut rows = self.row_pairs();
        rows.extend(other.row_pairs());
        Polyhedron::from_rows(self.ambient_dim(), rows)
    }

    /// Rows as `(vector, bound)` pairs.
    pub fn row_pairs(&self) -> Vec<(IntVector, Int)> {
        (0..self.num_rows())
            .map(|i| (self.a.row(i), self.b.entry(i).clone()))
            .collect()
    }

    /// The polyhedron with the listed rows turned into equalities.
    pub fn with_equalities(&self, rows: &[usize]) -> Polyhedron {
        let mut pairs = self.row_pairs();
        for &i in rows {
            pairs.push((-&self.a.row(i), -self.b.entry(i)));
        }
        Polyhedron::from_rows(self.ambient_dim(), pairs)
    }

    pub fn contains_rat(&self, p: &[Rational]) -> bool {
        assert_eq!(p.len(), self.ambient_dim());
        (0..self.num_rows()).all(|i| self.a.row(i).dot_rat(p) <= rat_int(self.b.entry(i)))
    }

    pub fn contains_int(&self, p: &IntVector) -> bool {
        (0..self.num_rows()).all(|i| self.a.row(i).dot(p) <= *self.b.entry(i))
    }

    pub fn maximize(&self, c: &[Rational]) -> LpOutcome {
        lp_maximize(&self.a, &self.b, c)
    }

    pub fn minimize(&self, c: &[Rational]) -> LpOutcome {
        lp_minimize(&self.a, &self.b, c)
    }

    pub fn is_empty(&self) -> bool {
        let zero = vec![Rational::zero(); self.ambient_dim()];
        matches!(self.maximize(&zero), LpOutcome::Infeasible)
    }

    /// True when the polyhedron fits in a box (the empty set counts as
    /// bounded).
    pub fn is_bounded(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        for j in 0..self.ambient_dim() {
            let mut c = vec![Rational::zero(); self.ambient_dim()];
            c[j] = Rational::one();
            if matches!(self.maximize(&c), LpOutcome::Unbounded) {
                return false;
            }
            if matches!(self.minimize(&c), LpOutcome::Unbounded) {
                return false;
            }
        }
        true
    }

    /// Exact range of `x_j` over the polyhedron.
    pub fn coordinate_range(&self, j: usize) -> Result<(Rational, Rational)> {
        let mut c = vec![Rational::zero(); self.ambient_dim()];
        c[j] = Rational::one();
        let lo = match self.minimize(&c) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Err(Error::EmptyPolyhedron),
            LpOutcome::Unbounded => {
                return Err(Error::Unbounded(format!("coordinate {j} unbounded below")))
            }
        };
        let hi = match self.maximize(&c) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Err(Error::EmptyPolyhedron),
            LpOutcome::Unbounded => {
                return Err(Error::Unbounded(format!("coordinate {j} unbounded above")))
            }
        };
        Ok((lo, hi))
    }

    /// Integer box guaranteed to contain the polyhedron: floors of the
    /// minima, ceilings of the maxima.
    pub fn bounding_box(&self) -> Result<(IntVector, IntVector)> {
        let d = self.ambient_dim();
        let mut lo = IntVector::zeros(d);
        let mut hi = IntVector::zeros(d);
        for j in 0..d {
            let (l, h) = self.coordinate_range(j)?;
            lo.set_entry(j, rat_floor(&l));
            hi.set_entry(j, rat_ceil(&h));
        }
        Ok((lo, hi))
    }

    /// `max c.x - min c.x`, exact.  Errors on the empty set, a zero
    /// direction, or a direction along which the body is unbounded.
    pub fn width_along(&self, c: &IntVector) -> Result<Rational> {
        if c.is_zero() {
            return Err(Error::ZeroVector("width direction".into()));
        }
        let cr = c.to_rat();
        let hi = match self.maximize(&cr) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Err(Error::EmptyPolyhedron),
            LpOutcome::Unbounded => {
                return Err(Error::Unbounded("width direction unbounded".into()))
            }
        };
        let lo = match self.minimize(&cr) {
            LpOutcome::Optimal { value, .. } => value,
            _ => return Err(Error::Unbounded("width direction unbounded".into())),
        };
        Ok(hi - lo)
    }

    /// Indices of rows that hold with equality on the whole polyhedron.
    pub fn implied_equalities(&self) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mut out = Vec::new();
        for i in 0..self.num_rows() {
            let c = self.a.row(i).to_rat();
            if let LpOutcome::Optimal { value, .. } = lp_minimize(&self.a, &self.b, &c) {
                if value == rat_int(self.b.entry(i)) {
                    out.push(i);
                }
            }
        }
        Ok(out)
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> Result<usize> {
        let implied = self.implied_equalities()?;
        let rows: Vec<Vec<Rational>> = implied.iter().map(|&i| self.a.row(i).to_rat()).collect();
        Ok(self.ambient_dim() - rat_rank(&rows))
    }

    /// Chart of the affine hull's lattice points; `None` when the hull
    /// contains no lattice point at all.
    pub fn lattice_chart(&self) -> Result<Option<LatticeChart>> {
        let implied = self.implied_equalities()?;
        let d = self.ambient_dim();
        if implied.is_empty() {
            return Ok(Some(LatticeChart {
                origin: IntVector::zeros(d),
                basis: IntMatrix::identity(d),
                body: self.clone(),
            }));
        }
        let ae = IntMatrix::from_rows(implied.iter().map(|&i| self.a.row(i)).collect());
        let be = IntVector::new(implied.iter().map(|&i| self.b.entry(i).clone()).collect());
        let Some(sol) = solve_affine_lattice(&ae, &be) else {
            return Ok(None);
        };
        let basis = if sol.kernel.is_empty() {
            // A single lattice point: the basis is d-by-0, not 0-by-0.
            IntMatrix::zeros(d, 0)
        } else {
            IntMatrix::from_cols(sol.kernel.clone())
        };
        let r = basis.cols();
        // Rewrite the strict rows in chart coordinates: a.(x0 + L y) <= b
        // becomes (a L) y <= b - a.x0.
        let implied_set: BTreeSet<usize> = implied.iter().copied().collect();
        let mut rows = Vec::new();
        for i in 0..self.num_rows() {
            if implied_set.contains(&i) {
                continue;
            }
            let ai = self.a.row(i);
            let mut row = IntVector::zeros(r);
            for j in 0..r {
                row.set_entry(j, ai.dot(&basis.col(j)));
            }
            let bound = self.b.entry(i) - ai.dot(&sol.point);
            rows.push((row, bound));
        }
        Ok(Some(LatticeChart {
            origin: sol.point,
            basis,
            body: Polyhedron::from_rows(r, rows),
        }))
    }

    /// All vertices, exact and deduplicated.  Errors on empty or
    /// unbounded input.
    pub fn vertices(&self) -> Result<Vec<Vec<Rational>>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded("vertex enumeration needs a polytope".into()));
        }
        self.basic_feasible_points()
    }

    /// Vertices of a pointed (possibly unbounded) polyhedron.
    pub fn vertices_pointed(&self) -> Result<Vec<Vec<Rational>>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if self.a.rank() < self.ambient_dim() {
            return Err(Error::Unbounded(
                "polyhedron has a lineality space; no vertices exist".into(),
            ));
        }
        self.basic_feasible_points()
    }

    /// Basic feasible points: solutions of `d` independent active rows
    /// that satisfy all constraints.
    fn basic_feasible_points(&self) -> Result<Vec<Vec<Rational>>> {
        let d = self.ambient_dim();
        let m = self.num_rows();
        if d == 0 {
            // The origin of R^0 is the single candidate.
            return Ok(vec![vec![]]);
        }
        if m < d {
            return Err(Error::Unbounded(
                "fewer rows than dimensions; no vertices exist".into(),
            ));
        }
        let rat_rows: Vec<Vec<Rational>> = self.a.to_rat_rows();
        let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for_each_combination(m, d, &mut |subset| {
            let sub: Vec<Vec<Rational>> = subset.iter().map(|&i| rat_rows[i].clone()).collect();
            let rhs: Vec<Rational> = subset
                .iter()
                .map(|&i| rat_int(self.b.entry(i)))
                .collect();
            if let Some(x) = rat_solve_square(&sub, &rhs) {
                if self.contains_rat(&x) {
                    found.insert(x);
                }
            }
        });
        Ok(found.into_iter().collect())
    }

    /// Tangent cone of the polyhedron at a vertex: apex `v`, generators
    /// the primitive extreme rays of the feasible directions.
    pub fn tangent_cone(&self, v: &[Rational]) -> Result<Cone> {
        let d = self.ambient_dim();
        assert_eq!(v.len(), d);
        if !self.contains_rat(v) {
            return Err(Error::NotAVertex);
        }
        let active: Vec<usize> = (0..self.num_rows())
            .filter(|&i| self.a.row(i).dot_rat(v) == rat_int(self.b.entry(i)))
            .collect();
        let active_rows: Vec<Vec<Rational>> = active.iter().map(|&i| self.a.row(i).to_rat()).collect();
        if rat_rank(&active_rows) < d {
            return Err(Error::NotAVertex);
        }
        let feasible = |y: &IntVector| -> bool {
            active.iter().all(|&i| !self.a.row(i).dot(y).is_positive())
        };
        let mut rays: BTreeSet<IntVector> = BTreeSet::new();
        if d == 1 {
            for cand in [IntVector::from_i64(&[1]), IntVector::from_i64(&[-1])] {
                if feasible(&cand) {
                    rays.insert(cand);
                }
            }
        } else {
            for_each_combination(active.len(), d - 1, &mut |subset| {
                let sub: Vec<Vec<Rational>> =
                    subset.iter().map(|&i| active_rows[i].clone()).collect();
                if rat_rank(&sub) != d - 1 {
                    return;
                }
                let kernel = rat_kernel(&sub);
                debug_assert_eq!(kernel.len(), 1);
                let Some(y) = primitive_from_rat(&kernel[0]) else {
                    return;
                };
                if feasible(&y) {
                    rays.insert(y);
                } else {
                    let neg = -&y;
                    if feasible(&neg) {
                        rays.insert(neg);
                    }
                }
            });
        }
        Ok(Cone {
            apex: v.to_vec(),
            generators: rays.into_iter().collect(),
        })
    }

    /// All nonempty faces of a polytope, including the polytope itself,
    /// each exactly once.  Faces are keyed by their closed active sets,
    /// which arise as intersections of vertex active sets.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let verts = self.vertices()?;
        let active: Vec<BTreeSet<usize>> = verts
            .iter()
            .map(|v| {
                (0..self.num_rows())
                    .filter(|&i| self.a.row(i).dot_rat(v) == rat_int(self.b.entry(i)))
                    .collect()
            })
            .collect();
        let mut sets: BTreeSet<Vec<usize>> = active
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        // Close under pairwise intersection; iterated pairwise meets
        // reach every subset intersection.
        loop {
            let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
            let before = sets.len();
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let si: BTreeSet<usize> = current[i].iter().copied().collect();
                    let meet: Vec<usize> = current[j]
                        .iter()
                        .filter(|r| si.contains(r))
                        .copied()
                        .collect();
                    sets.insert(meet);
                }
            }
            if sets.len() == before {
                break;
            }
        }
        let mut faces = Vec::new();
        for tight in sets {
            let tight_set: BTreeSet<usize> = tight.iter().copied().collect();
            let members: Vec<&Vec<Rational>> = verts
                .iter()
                .zip(active.iter())
                .filter(|(_, av)| av.is_superset(&tight_set))
                .map(|(v, _)| v)
                .collect();
            debug_assert!(!members.is_empty());
            let dim = affine_rank_of_points(&members);
            faces.push(Face {
                active_set: tight,
                dim,
                polyhedron: self.with_equalities(
                    &tight_set.iter().copied().collect::<Vec<_>>(),
                ),
            });
        }
        faces.sort_by(|x, y| (x.dim, &x.active_set).cmp(&(y.dim, &y.active_set)));
        Ok(faces)
    }

    /// Smallest width over nonzero integer directions, with a
    /// lex-minimal achieving direction (first nonzero entry positive).
    ///
    /// Lower-dimensional bodies have width zero along any normal of
    /// their affine hull.  For full-dimensional bodies the search box is
    /// rigorous: the largest axis-parallel cube inside `B`, of radius
    /// `r`, forces `width(B, c) >= 2 r max|c_i|`, so directions beyond
    /// `W0 / (2r)` cannot beat the best coordinate width `W0`.
    pub fn lattice_width(&self) -> Result<(Rational, IntVector)> {
        let d = self.ambient_dim();
        assert!(d > 0, "lattice width needs a positive dimension");
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded("lattice width needs a polytope".into()));
        }
        let implied = self.implied_equalities()?;
        for &i in &implied {
            if let Some(normal) = self.a.row(i).primitive() {
                return Ok((Rational::zero(), sign_normalize(normal)));
            }
        }
        // Full-dimensional from here on.
        let mut w0 = None;
        let mut c0 = IntVector::unit(d, 0);
        for j in 0..d {
            let w = self.width_along(&IntVector::unit(d, j))?;
            if w0.as_ref().map_or(true, |best| w < *best) {
                w0 = Some(w);
                c0 = IntVector::unit(d, j);
            }
        }
        let w0 = w0.expect("positive dimension");
        // Largest inscribed cube: maximize r subject to
        // a_i . x + r |a_i|_1 <= b_i.
        let mut ball_rows = Vec::new();
        for i in 0..self.num_rows() {
            let row = self.a.row(i);
            let l1: Int = row.iter().map(|e| e.abs()).sum();
            let mut e: Vec<Int> = row.entries().to_vec();
            e.push(l1);
            ball_rows.push((IntVector::new(e), self.b.entry(i).clone()));
        }
        let mut nonneg = IntVector::zeros(d + 1);
        nonneg.set_entry(d, int(-1));
        ball_rows.push((nonneg, int(0)));
        let ball = Polyhedron::from_rows(d + 1, ball_rows);
        let mut obj = vec![Rational::zero(); d + 1];
        obj[d] = Rational::one();
        let radius = match ball.maximize(&obj) {
            LpOutcome::Optimal { value, .. } => value,
            _ => unreachable!("inscribed-cube program is feasible and bounded"),
        };
        assert!(
            radius.is_positive(),
            "full-dimensional polytope must have positive inball radius"
        );
        let r_bound = rat_floor(&(&w0 / (&radius * rat_int(&int(2)))));
        let rb = r_bound.to_i64().ok_or_else(|| {
            Error::SearchExhausted("lattice width search radius overflows".into())
        })?;
        // Sweep directions shell by shell in max-norm.  Every direction
        // on shell s has width at least 2 r s, so the sweep stops as
        // soon as that lower bound passes the best width seen; shells
        // past rb cannot even beat the coordinate width w0.
        let mut best = (w0, c0);
        let mut examined = 0i64;
        let mut s = 1i64;
        while s <= rb {
            let shell_floor = rat_int(&int(2 * s)) * &radius;
            if shell_floor > best.0 {
                break;
            }
            let mut cursor = vec![-s; d];
            'shell: loop {
                let on_shell = cursor.iter().any(|&v| v.abs() == s);
                if on_shell {
                    let c = IntVector::new(cursor.iter().map(|&v| int(v)).collect());
                    let skip = c
                        .iter()
                        .find(|e| !e.is_zero())
                        .map_or(true, |e| e.is_negative())
                        || c.content() > Int::one();
                    if !skip {
                        examined += 1;
                        if examined > 20_000 {
                            return Err(Error::SearchExhausted(
                                "lattice width search exceeds the candidate cap".into(),
                            ));
                        }
                        let w = self.width_along(&c)?;
                        if w < best.0 || (w == best.0 && c < best.1) {
                            best = (w, c);
                        }
                    }
                }
                let mut v = 0;
                loop {
                    if v == d {
                        break 'shell;
                    }
                    cursor[v] += 1;
                    if cursor[v] <= s {
                        break;
                    }
                    cursor[v] = -s;
                    v += 1;
                }
            }
            s += 1;
        }
        Ok((best.0, sign_normalize(best.1)))
    }

    /// Project onto the first `k` coordinates by Fourier-Motzkin
    /// elimination with redundancy pruning.  Total: the projection of an
    /// empty polyhedron keeps an infeasible row.
    pub fn project_onto_first(&self, k: usize) -> Polyhedron {
        let d = self.ambient_dim();
        assert!(k <= d);
        let mut rows = self.row_pairs();
        for coord in (k..d).rev() {
            rows = fm_eliminate_last(rows, coord);
            rows = prune_rows(coord, rows);
        }
        Polyhedron::from_rows(k, rows)
    }

    /// Drop rows implied by the others.
    pub fn remove_redundant(&self) -> Polyhedron {
        let rows = prune_rows(self.ambient_dim(), self.row_pairs());
        Polyhedron::from_rows(self.ambient_dim(), rows)
    }
}

/// Normalize the sign so the first nonzero entry is positive.
fn sign_normalize(v: IntVector) -> IntVector {
    match v.iter().find(|e| !e.is_zero()) {
        Some(e) if e.is_negative() => -&v,
        _ => v,
    }
}

/// Affine rank (dimension of the affine hull) of a point set.
fn affine_rank_of_points(points: &[&Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(x, y)| x - y).collect())
        .collect();
    rat_rank(&rows)
}

/// Visit every `k`-subset of `{0, .., n-1}` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Eliminate one coordinate by Fourier-Motzkin; rows keep integer data
/// by cross-scaling each (positive, negative) pair.
fn fm_eliminate_last(rows: Vec<(IntVector, Int)>, coord: usize) -> Vec<(IntVector, Int)> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: BTreeMap<IntVector, Int> = BTreeMap::new();
    let drop_coord = |v: &IntVector| -> IntVector {
        let mut e: Vec<Int> = v.entries().to_vec();
        e.remove(coord);
        IntVector::new(e)
    };
    let mut push = |row: IntVector, bound: Int| {
        if let Some((r, b)) = normalize_row(row, bound) {
            match out.get_mut(&r) {
                Some(existing) => {
                    if b < *existing {
                        *existing = b;
                    }
                }
                None => {
                    out.insert(r, b);
                }
            }
        }
    };
    for (row, bound) in rows {
        let c = row.entry(coord).clone();
        if c.is_zero() {
            push(drop_coord(&row), bound);
        } else if c.is_positive() {
            pos.push((row, bound, c));
        } else {
            neg.push((row, bound, c));
        }
    }
    for (pr, pb, pc) in &pos {
        for (nr, nb, nc) in &neg {
            let sp = -nc; // positive scale for the positive row
            let combined = &pr.scale(&sp) + &nr.scale(pc);
            debug_assert!(combined.entry(coord).is_zero());
            let bound = pb * &sp + nb * pc;
            push(drop_coord(&combined), bound);
        }
    }
    out.into_iter().collect()
}

/// Canonical form of one row: divide out the common content; drop rows
/// that hold identically; collapse contradictions to `0 <= -1`.
fn normalize_row(row: IntVector, bound: Int) -> Option<(IntVector, Int)> {
    if row.is_zero() {
        if bound.is_negative() {
            return Some((row, int(-1)));
        }
        return None;
    }
    let g = row.content().gcd(&bound);
    debug_assert!(g.is_positive());
    let r = IntVector::new(row.iter().map(|e| e / &g).collect());
    Some((r, bound / g))
}

/// Drop rows implied by the remaining ones (checked exactly by LP).
fn prune_rows(dim: usize, rows: Vec<(IntVector, Int)>) -> Vec<(IntVector, Int)> {
    let mut keep = vec![true; rows.len()];
    for i in 0..rows.len() {
        let others: Vec<(IntVector, Int)> = rows
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && keep[*j])
            .map(|(_, r)| r.clone())
            .collect();
        let p = Polyhedron::from_rows(dim, others);
        let c = rows[i].0.to_rat();
        if let LpOutcome::Optimal { value, .. } = p.maximize(&c) {
            if value <= rat_int(&rows[i].1) {
                keep[i] = false;
            }
        }
    }
    rows.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r)
        .collect()
}
