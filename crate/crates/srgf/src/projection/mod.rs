//! Projections of lattice-point sets under integral linear maps.
//!
//! The image `T(P cap Z^d)` of a polytope's lattice points keeps a
//! short rational representation even though many points can collapse
//! onto one image point.  The construction removes the overcounting
//! fiber by fiber: the image is partitioned into pieces over which all
//! fibers are flat along one shared direction `w`; flatness bounds the
//! gaps between consecutive values of `<w, x>` inside a fiber, so
//! appending `<w, x>` as an extra tracking coordinate, projecting
//! recursively, and subtracting finitely many shifted copies leaves
//! exactly the fiber minima.  Specializing the tracking coordinate to
//! one and patching the pieces over the image yields the projection.
//!
//! The recursion adds one independent row to the map per level, so it
//! bottoms out at injective maps, where substitution alone answers.

use crate::barvinok::polytope_genfun;
use crate::exactmath::{
    int, lll_reduce, rat_ceil, rat_floor, rat_int, smith_normal_form, solve_affine_lattice, Int,
    IntMatrix, IntVector, Rational,
};
use crate::genfun::{count, difference, substitute, GenFun, MonomialMap, Term};
use crate::polyhedra::{LpOutcome, Polyhedron};
use crate::{Error, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Regions examined before a fiber partition gives up.
const REGION_BUDGET: usize = 4096;

/// Lattice-point candidates scanned per image region.
const FIBER_SCAN_BUDGET: usize = 250_000;

/// An integral linear map `Z^d -> Z^k`, kept as its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProjection {
    matrix: IntMatrix,
}

impl LatticeProjection {
    pub fn new(matrix: IntMatrix) -> Self {
        assert!(matrix.rows() >= 1, "projection needs a target coordinate");
        assert!(matrix.cols() >= 1, "projection needs a source coordinate");
        LatticeProjection { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Image of a single lattice point.
    pub fn apply(&self, p: &IntVector) -> IntVector {
        self.matrix.mul_vec(p)
    }
}

/// One piece of a fiber-flatness partition of the image.
#[derive(Clone, Debug)]
pub struct FiberPartitionPiece {
    /// Closed region of image space.  Relative interiors of the pieces
    /// are pairwise disjoint and jointly cover every lattice point of
    /// the image.
    pub region: Polyhedron,
    /// Direction in source space, not orthogonal to the fiber spaces:
    /// every fiber over an integral point of the region is flat along
    /// it (width at most one, or at most twice the fiber's own lattice
    /// width).
    pub direction: IntVector,
}

/// Tuning knobs for the flatness machinery.
#[derive(Clone, Debug)]
pub struct FlatnessConfig {
    /// Upper bound on the flatness constant, used for every fiber
    /// dimension when set.  The default grows as `r * 2^r`, which
    /// dominates the known values in the desk-scale range.
    pub omega: Option<Rational>,
    /// Hard cap on the number of shifted differences used to select
    /// fiber minima; the default is `ceil(2 * omega(r))`, and the
    /// exact spread of the piece at hand shrinks it further.
    pub margin: Option<u32>,
}

impl Default for FlatnessConfig {
    fn default() -> Self {
        FlatnessConfig { omega: None, margin: None }
    }
}

impl FlatnessConfig {
    /// Flatness bound for fibers of dimension `r`.  Dimension one is
    /// exact: a segment wider than one along a direction contains a
    /// lattice point, so the constant is one.
    fn flatness_bound(&self, r: usize) -> Rational {
        match &self.omega {
            Some(w) => w.clone(),
            None if r <= 1 => Rational::one(),
            None => Rational::from(int(r as i64) * (Int::one() << r)),
        }
    }

    /// Largest selection margin allowed for fibers of dimension `r`.
    fn margin_bound(&self, r: usize) -> i64 {
        match self.margin {
            Some(m) => i64::from(m),
            // Lattice points on a fiber line are consecutive multiples
            // of the primitive kernel step, and the tracking direction
            // advances by exactly one per step, so gaps are exactly one.
            None if r <= 1 => 1,
            None => {
                let two_omega = self.flatness_bound(r) * Rational::from(int(2));
                rat_ceil(&two_omega).to_i64().unwrap_or(i64::MAX)
            }
        }
    }
}

/// Generating function of `T(P cap Z^d)`, each image point counted
/// once, with the default tuning.
pub fn project_genfun(p: &Polyhedron, t: &LatticeProjection) -> Result<GenFun> {
    project_with(p, t, &FlatnessConfig::default())
}

/// Generating function of `T(P cap Z^d)` under explicit tuning.
pub fn project_with(
    p: &Polyhedron,
    t: &LatticeProjection,
    config: &FlatnessConfig,
) -> Result<GenFun> {
    assert_eq!(t.source_dim(), p.ambient_dim(), "map/polytope dimension mismatch");
    if !p.is_empty() && !p.is_bounded() {
        return Err(Error::Unbounded("projection needs a bounded polytope".into()));
    }
    project_impl(p, t.matrix(), config)
}

fn project_impl(p: &Polyhedron, t: &IntMatrix, config: &FlatnessConfig) -> Result<GenFun> {
    let d = p.ambient_dim();
    let k = t.rows();
    if p.is_empty() {
        return Ok(GenFun::zero(k));
    }
    let r = t.rank();
    if r == 0 {
        // Everything collapses onto the origin; the image is a single
        // point exactly when the polytope holds any lattice point.
        let total = count(&polytope_genfun(p)?)?;
        if total.is_zero() {
            return Ok(GenFun::zero(k));
        }
        let origin = Term::monomial(Rational::one(), IntVector::zeros(k));
        return Ok(GenFun::from_terms(k, vec![origin]));
    }
    if r < k {
        // The image spans a proper sublattice.  Factor the map through
        // a surjection onto `Z^r` followed by an injective embedding;
        // the embedding acts on exponents only.
        let (onto, embed) = lattice_factor(t, r);
        let inner = project_impl(p, &onto, config)?;
        return substitute(&inner, &MonomialMap::from_matrix(&embed));
    }
    if r == d {
        // Injective map: distinct points keep distinct images, so the
        // polytope's own function pushes through unchanged.
        return substitute(&polytope_genfun(p)?, &MonomialMap::from_matrix(t));
    }

    let fiber_dim = d - k;
    if fiber_dim == 1 {
        // Fibers are segments of lattice lines.  When the image is
        // small enough to scan, inspect every fiber directly instead
        // of stacking a tracking coordinate; the structural route
        // below stays available for images too large to walk.
        if let Some(direct) = project_line_fibers(p, t)? {
            return Ok(direct);
        }
    }
    let cells = certified_cells(p, t)?;
    let tt = t.transpose();
    let mut total = GenFun::zero(k);
    for cell in cells {
        // Pull the cell back to source space: {x in P : T x in Q}.
        // Cells are pairwise disjoint, so the per-cell images add up
        // without any overlap correction.
        let mut rows = p.row_pairs();
        for (g, c) in cell.region.row_pairs() {
            rows.push((tt.mul_vec(&g), c));
        }
        let restricted = Polyhedron::from_rows(d, rows);
        if restricted.is_empty() {
            continue;
        }

        // Track <w, x> as an extra coordinate and project recursively;
        // the stacked map has one more independent row.
        let mut hat_rows: Vec<IntVector> = (0..k).map(|i| t.row(i)).collect();
        hat_rows.push(cell.direction.clone());
        let t_hat = IntMatrix::from_rows(hat_rows);
        let lifted = project_impl(&restricted, &t_hat, config)?;
        if count(&lifted)?.is_zero() {
            // The restriction holds no lattice points at all.
            continue;
        }

        // Values of <w, x> inside one fiber spread at most this far, so
        // gaps between consecutive values are bounded by the same
        // number; the flatness bound usually beats it.
        let spread = fiber_spread(&restricted, t, &cell.direction)?;
        let selected = if spread < Rational::one() {
            // All fibers take a single tracking value: nothing to drop.
            lifted
        } else {
            let by_spread = rat_ceil(&spread).to_i64().unwrap_or(i64::MAX);
            let margin = config.margin_bound(fiber_dim).min(by_spread).max(1);
            select_minimal(&lifted, u32::try_from(margin).unwrap_or(u32::MAX))?
        };

        // Specialize the tracking coordinate to one.
        let mut images: Vec<IntVector> = (0..k).map(|i| IntVector::unit(k, i)).collect();
        images.push(IntVector::zeros(k));
        total = total.add(&substitute(&selected, &MonomialMap::new(k, images))?);
    }
    Ok(total)
}

/// Split a map of rank `r < k` into a surjection onto `Z^r` and an
/// injective embedding back into `Z^k`.
fn lattice_factor(t: &IntMatrix, rank: usize) -> (IntMatrix, IntMatrix) {
    let s = smith_normal_form(t);
    let u_inv = unimodular_inverse(&s.u);
    let v_inv = unimodular_inverse(&s.v);
    let onto = IntMatrix::from_rows((0..rank).map(|i| v_inv.row(i)).collect());
    let embed = IntMatrix::from_cols(
        (0..rank).map(|j| u_inv.col(j).scale(s.d.get(j, j))).collect(),
    );
    debug_assert_eq!(embed.mul(&onto), *t);
    (onto, embed)
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let det = m.det();
    debug_assert!(det.abs().is_one(), "inverse of a non-unimodular matrix");
    let adj = m.adjugate().expect("unimodular matrices are invertible");
    if det.is_negative() {
        IntMatrix::from_rows((0..adj.rows()).map(|i| -&adj.row(i)).collect())
    } else {
        adj
    }
}

/// Exact upper bound on `<w, x1 - x2>` over pairs in the polytope with
/// `T x1 = T x2`: the widest any fiber stretches along `w`.
fn fiber_spread(p: &Polyhedron, t: &IntMatrix, w: &IntVector) -> Result<Rational> {
    let d = p.ambient_dim();
    let mut rows = Vec::new();
    for (a, b) in p.row_pairs() {
        let mut left = a.entries().to_vec();
        left.extend(std::iter::repeat(Int::zero()).take(d));
        rows.push((IntVector::new(left), b.clone()));
        let mut right = vec![Int::zero(); d];
        right.extend(a.entries().iter().cloned());
        rows.push((IntVector::new(right), b));
    }
    for i in 0..t.rows() {
        let ti = t.row(i);
        let mut eq = ti.entries().to_vec();
        eq.extend((-&ti).entries().iter().cloned());
        let eq = IntVector::new(eq);
        rows.push((eq.clone(), Int::zero()));
        rows.push((-&eq, Int::zero()));
    }
    let doubled = Polyhedron::from_rows(2 * d, rows);
    let mut obj = w.to_rat();
    obj.extend((-w).to_rat());
    match doubled.maximize(&obj) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::EmptyPolyhedron),
        LpOutcome::Unbounded => Err(Error::Unbounded("fiber spread is unbounded".into())),
    }
}

/// Drop every point whose fiber holds another point with a smaller
/// last coordinate: subtract the `l`-shifted copies of the set along
/// the last axis for `l = 1, ..., margin`.  Exact whenever `margin` is
/// at least the largest gap between consecutive last-coordinate values
/// within any fiber.
pub fn select_minimal(f: &GenFun, margin: u32) -> Result<GenFun> {
    let n = f.dim();
    assert!(n >= 1, "selection needs a distinguished last coordinate");
    if let Some(points) = unit_monomial_support(f) {
        // Explicit points: a point is dropped exactly when another sits
        // `1..=margin` steps below it, which is a set lookup rather
        // than indicator algebra.
        let index: BTreeSet<&IntVector> = points.iter().collect();
        let mut kept = Vec::new();
        for point in &points {
            let mut shadowed = false;
            let mut probe = point.clone();
            for _ in 0..margin {
                let next = probe.entry(n - 1) - Int::one();
                probe.set_entry(n - 1, next);
                if index.contains(&probe) {
                    shadowed = true;
                    break;
                }
            }
            if !shadowed {
                kept.push(Term::monomial(Rational::one(), point.clone()));
            }
        }
        return Ok(GenFun::from_terms(n, kept));
    }
    let step = IntVector::unit(n, n - 1);
    let mut kept = f.clone();
    for l in 1..=margin {
        let shifted = f.shift(&step.scale(&int(i64::from(l))));
        kept = difference(&kept, &shifted)?;
    }
    Ok(kept)
}

/// The support of `f` when it is an indicator by inspection — every
/// term a monomial with coefficient one — and `None` otherwise.
fn unit_monomial_support(f: &GenFun) -> Option<Vec<IntVector>> {
    let mut points = Vec::with_capacity(f.terms().len());
    for term in f.terms() {
        if !term.denominators.is_empty() || !term.coefficient.is_one() {
            return None;
        }
        points.push(term.numerator.clone());
    }
    Some(points)
}

/// One fiber of the map over an integral image point, in coordinates
/// of the kernel lattice.
struct Fiber {
    body: Polyhedron,
    width_min: Rational,
    thin_direction: IntVector,
}

/// Partition the image of `P` into closed regions, each with a source
/// direction along which all of its fibers are flat.
///
/// The regions are the certified cells together with all of their
/// faces, so the relative interiors of the returned pieces are
/// pairwise disjoint and tile the image's lattice points — the shape
/// the patching operation expects.
pub fn partition(p: &Polyhedron, t: &LatticeProjection) -> Result<Vec<FiberPartitionPiece>> {
    assert_eq!(t.source_dim(), p.ambient_dim(), "map/polytope dimension mismatch");
    let mut pieces = Vec::new();
    for cell in certified_cells(p, t.matrix())? {
        for face in cell.region.faces()? {
            pieces.push(FiberPartitionPiece {
                region: face.polyhedron,
                direction: cell.direction.clone(),
            });
        }
    }
    Ok(pieces)
}

/// Split the image of `P` into pairwise disjoint closed cells, each
/// with a direction along which all of its fibers are flat.
///
/// Starting from the whole image, a region is kept once some small
/// direction passes the flatness test on every integral fiber — the
/// candidate with the smallest worst-case fiber width wins, keeping
/// later selection margins low — and is otherwise bisected along the
/// coordinate with the largest integral range.  Cuts run strictly
/// between integers, so every lattice point of the image lands in
/// exactly one cell.  Cells whose integral points miss the image
/// lattice entirely are dropped.
fn certified_cells(p: &Polyhedron, t: &IntMatrix) -> Result<Vec<FiberPartitionPiece>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded("fiber partition needs a polytope".into()));
    }
    let zero_fiber = solve_affine_lattice(t, &IntVector::zeros(t.rows()))
        .expect("the zero fiber holds the origin");
    if zero_fiber.kernel.is_empty() {
        return Err(Error::BadInput(
            "the map is injective: there are no fibers to partition".into(),
        ));
    }
    let kernel = IntMatrix::from_cols(zero_fiber.kernel.clone());
    let kernel_t = kernel.transpose();
    if kernel.cols() == 1 {
        // Fibers are segments of a lattice line, and a segment's width
        // along the only primitive chart direction is its lattice
        // width.  Every fiber is flat at once: the whole image is a
        // single certified cell and no fiber needs inspecting.
        let w = lift_direction(t, &kernel_t, &IntVector::from_i64(&[1]))?;
        return Ok(vec![FiberPartitionPiece {
            region: image_polytope(p, t),
            direction: w,
        }]);
    }
    let candidates = direction_candidates(kernel.cols());

    let mut queue = vec![image_polytope(p, t)];
    let mut cells = Vec::new();
    let mut processed = 0usize;
    while let Some(region) = queue.pop() {
        processed += 1;
        if processed > REGION_BUDGET {
            return Err(Error::SearchExhausted(
                "fiber partition exceeded its region budget".into(),
            ));
        }
        if region.is_empty() {
            continue;
        }
        let ys = enumerate_region_points(&region, FIBER_SCAN_BUDGET)?;
        let mut fibers = Vec::new();
        for y in &ys {
            if let Some(body) = fiber_body(p, t, &kernel_t, y) {
                let (width_min, thin_direction) = body.lattice_width()?;
                fibers.push(Fiber { body, width_min, thin_direction });
            }
        }
        if fibers.is_empty() {
            // No integral point of this region is hit by the lattice.
            continue;
        }

        let mut found: Option<(IntVector, Rational)> = None;
        for c in &candidates {
            if let Some(widest) = flat_width(&fibers, c)? {
                let better = found.as_ref().map_or(true, |(_, best)| widest < *best);
                if better {
                    let thin = widest < Rational::one();
                    found = Some((c.clone(), widest));
                    if thin {
                        break;
                    }
                }
            }
        }
        if found.is_none() && fibers.len() == 1 {
            // A lone fiber is always flat along its own thinnest
            // direction.
            if let Some(c) = fibers[0].thin_direction.primitive() {
                let widest = fibers[0].body.width_along(&c)?;
                found = Some((c, widest));
            }
        }

        match found {
            Some((c, _)) => {
                let w = lift_direction(t, &kernel_t, &c)?;
                cells.push(FiberPartitionPiece { region, direction: w });
            }
            None => {
                let (j, lo, spread) = widest_coordinate(&region)?;
                debug_assert!(spread >= Int::one(), "distinct fibers leave room to cut");
                let theta = &lo + &(spread / int(2));
                let k_dim = region.ambient_dim();
                let below = region.and_rows(&Polyhedron::from_rows(
                    k_dim,
                    vec![(IntVector::unit(k_dim, j), theta.clone())],
                ));
                let above = region.and_rows(&Polyhedron::from_rows(
                    k_dim,
                    vec![(-&IntVector::unit(k_dim, j), -(theta + Int::one()))],
                ));
                queue.push(below);
                queue.push(above);
            }
        }
    }
    Ok(cells)
}

/// The widest fiber width along `c` when every fiber is flat along it
/// (width at most one, or at most twice the fiber's own lattice
/// width); `None` as soon as one fiber fails.
fn flat_width(fibers: &[Fiber], c: &IntVector) -> Result<Option<Rational>> {
    let mut widest = Rational::zero();
    for fiber in fibers {
        let w = fiber.body.width_along(c)?;
        if w > Rational::one() && w > &fiber.width_min * &Rational::from(int(2)) {
            return Ok(None);
        }
        if w > widest {
            widest = w;
        }
    }
    Ok(Some(widest))
}

/// Projection with one-dimensional fibers, by direct inspection: scan
/// the integral points of the image polytope and keep those whose
/// fiber — a segment of a lattice line — holds an integral point,
/// decided by exact interval arithmetic on the line parameter.  The
/// hits come back as plain monomials, which later selection steps
/// treat as explicit points.  `None` when the image holds too many
/// candidates to scan.
fn project_line_fibers(p: &Polyhedron, t: &IntMatrix) -> Result<Option<GenFun>> {
    if !p.is_bounded() {
        return Err(Error::Unbounded("fiber projection needs a polytope".into()));
    }
    let k = t.rows();
    let zero_fiber = solve_affine_lattice(t, &IntVector::zeros(k))
        .expect("the zero fiber holds the origin");
    debug_assert_eq!(zero_fiber.kernel.len(), 1, "fibers must be lines");
    let step = zero_fiber.kernel[0].clone();
    let image = image_polytope(p, t);
    let ys = match enumerate_region_points(&image, FIBER_SCAN_BUDGET) {
        Ok(ys) => ys,
        Err(Error::EnumerationCap(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut terms = Vec::new();
    for y in ys {
        if fiber_holds_point(p, t, &step, &y) {
            terms.push(Term::monomial(Rational::one(), y));
        }
    }
    Ok(Some(GenFun::from_terms(k, terms)))
}

/// Whether the fiber of `y` — the lattice line through a base solution
/// along `step`, clipped to `P` — holds an integral point: the
/// feasible parameter interval must contain an integer.
fn fiber_holds_point(p: &Polyhedron, t: &IntMatrix, step: &IntVector, y: &IntVector) -> bool {
    let Some(solution) = solve_affine_lattice(t, y) else {
        return false;
    };
    let x0 = solution.point;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (a, b) in p.row_pairs() {
        let slope = a.dot(step);
        let slack = rat_int(&(b - a.dot(&x0)));
        if slope.is_zero() {
            if slack.is_negative() {
                return false;
            }
            continue;
        }
        let bound = slack / rat_int(&slope);
        if slope.is_positive() {
            hi = Some(match hi {
                None => bound,
                Some(h) => h.min(bound),
            });
        } else {
            lo = Some(match lo {
                None => bound,
                Some(l) => l.max(bound),
            });
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => rat_ceil(&l) <= rat_floor(&h),
        // A bounded polytope clips the parameter on both sides; a
        // missing bound means the row system never cut that side.
        _ => true,
    }
}

/// The integral points of a region, dispatched on dimension: planar
/// regions get a column scan whose work tracks the number of columns
/// plus hits, everything else walks a bounding box.  Long thin diagonal
/// strips have tiny point counts but enormous boxes, and they show up
/// constantly as images of tracking-coordinate stacks.
fn enumerate_region_points(region: &Polyhedron, cap: usize) -> Result<Vec<IntVector>> {
    if region.ambient_dim() == 2 {
        integral_points_planar(region, cap)
    } else {
        integral_points(region, cap)
    }
}

/// Integral points of a planar region, column by column.  Each column
/// clips every row to an exact interval for the second coordinate, so
/// no candidate outside the region is ever visited.
fn integral_points_planar(region: &Polyhedron, cap: usize) -> Result<Vec<IntVector>> {
    debug_assert_eq!(region.ambient_dim(), 2);
    let (l, h) = match region.coordinate_range(0) {
        Ok(range) => range,
        Err(Error::EmptyPolyhedron) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut m = rat_ceil(&l);
    let m_hi = rat_floor(&h);
    if &m_hi - &m >= int(cap as i64) {
        return Err(Error::EnumerationCap(
            "image region holds too many lattice candidates".into(),
        ));
    }
    let mut out = Vec::new();
    while m <= m_hi {
        let mut t_lo: Option<Rational> = None;
        let mut t_hi: Option<Rational> = None;
        let mut feasible = true;
        for (a, b) in region.row_pairs() {
            let slack = rat_int(&(b - a.entry(0) * &m));
            let slope = a.entry(1);
            if slope.is_zero() {
                if slack.is_negative() {
                    feasible = false;
                    break;
                }
                continue;
            }
            let bound = slack / rat_int(slope);
            if slope.is_positive() {
                t_hi = Some(match t_hi {
                    None => bound,
                    Some(cur) => cur.min(bound),
                });
            } else {
                t_lo = Some(match t_lo {
                    None => bound,
                    Some(cur) => cur.max(bound),
                });
            }
        }
        if feasible {
            let (Some(t_lo), Some(t_hi)) = (t_lo, t_hi) else {
                return Err(Error::Unbounded(
                    "planar scan needs a bounded region".into(),
                ));
            };
            let mut tau = rat_ceil(&t_lo);
            let tau_hi = rat_floor(&t_hi);
            while tau <= tau_hi {
                if out.len() >= cap {
                    return Err(Error::EnumerationCap(
                        "image region holds too many lattice candidates".into(),
                    ));
                }
                out.push(IntVector::new(vec![m.clone(), tau.clone()]));
                tau += Int::one();
            }
        }
        m += Int::one();
    }
    Ok(out)
}

/// The fiber over `y` in kernel-lattice coordinates around an integral
/// base point, or `None` when the affine lattice misses `y` entirely.
fn fiber_body(
    p: &Polyhedron,
    t: &IntMatrix,
    kernel_t: &IntMatrix,
    y: &IntVector,
) -> Option<Polyhedron> {
    let base = solve_affine_lattice(t, y)?.point;
    let mut rows = Vec::new();
    for (a, b) in p.row_pairs() {
        let slack = b - a.dot(&base);
        rows.push((kernel_t.mul_vec(&a), slack));
    }
    Some(Polyhedron::from_rows(kernel_t.rows(), rows))
}

/// Some integral `w` with `L^T w = c` for the kernel chart `L`; exists
/// because the kernel basis is saturated.
///
/// Adding a row of `t` to `w` changes nothing that matters — it is
/// constant on every fiber — but it changes the size of the numbers,
/// and `w` becomes an image coordinate of the recursive subproblem.
/// The particular solution is therefore reduced against the row
/// lattice before it is returned.
fn lift_direction(t: &IntMatrix, kernel_t: &IntMatrix, c: &IntVector) -> Result<IntVector> {
    let mut w = solve_affine_lattice(kernel_t, c)
        .map(|s| s.point)
        .ok_or_else(|| Error::DependentInput("kernel chart is not primitive".into()))?;
    let rows = independent_rows(t);
    let basis = if rows.is_empty() { rows } else { lll_reduce(&rows)? };
    loop {
        let mut improved = false;
        for b in &basis {
            let bb = b.norm_sq();
            if bb.is_zero() {
                continue;
            }
            let q = Rational::new(w.dot(b), bb).round().to_integer();
            if q.is_zero() {
                continue;
            }
            let shifted = &w - &b.scale(&q);
            if shifted.norm_sq() < w.norm_sq() {
                w = shifted;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(w)
}

/// A maximal linearly independent subset of the rows of `t`.
fn independent_rows(t: &IntMatrix) -> Vec<IntVector> {
    let mut kept = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for i in 0..t.rows() {
        let row = t.row(i);
        let mut v = row.to_rat();
        for e in &echelon {
            let pivot = e.iter().position(|x| !x.is_zero()).expect("nonzero echelon row");
            if !v[pivot].is_zero() {
                let f = &v[pivot] / &e[pivot];
                for (vj, ej) in v.iter_mut().zip(e.iter()) {
                    *vj -= &f * ej;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            kept.push(row);
        }
    }
    kept
}

/// The image polytope `T(P)`, by eliminating the source variables.
fn image_polytope(p: &Polyhedron, t: &IntMatrix) -> Polyhedron {
    let d = p.ambient_dim();
    let k = t.rows();
    let mut rows = Vec::new();
    for i in 0..k {
        // y_i = <t_i, x>, as two inequalities.
        let ti = t.row(i);
        let mut eq = vec![Int::zero(); k + d];
        eq[i] = Int::one();
        for j in 0..d {
            eq[k + j] = -ti.entry(j).clone();
        }
        let eq = IntVector::new(eq);
        rows.push((eq.clone(), Int::zero()));
        rows.push((-&eq, Int::zero()));
    }
    for (a, b) in p.row_pairs() {
        let mut row = vec![Int::zero(); k];
        row.extend(a.entries().iter().cloned());
        rows.push((IntVector::new(row), b));
    }
    Polyhedron::from_rows(k + d, rows).project_onto_first(k)
}

/// All integral points of a bounded region, capped.
fn integral_points(region: &Polyhedron, cap: usize) -> Result<Vec<IntVector>> {
    let k = region.ambient_dim();
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    let mut volume = Int::one();
    for j in 0..k {
        let (l, h) = region.coordinate_range(j)?;
        let lj = rat_ceil(&l);
        let hj = rat_floor(&h);
        if lj > hj {
            return Ok(Vec::new());
        }
        volume *= &hj - &lj + Int::one();
        lo.push(lj);
        hi.push(hj);
    }
    if volume > int(cap as i64) {
        return Err(Error::EnumerationCap(
            "image region holds too many lattice candidates".into(),
        ));
    }
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    loop {
        let y = IntVector::new(cursor.clone());
        if region.contains_int(&y) {
            out.push(y);
        }
        let mut j = 0;
        loop {
            if j == k {
                return Ok(out);
            }
            cursor[j] += Int::one();
            if cursor[j] <= hi[j] {
                break;
            }
            cursor[j] = lo[j].clone();
            j += 1;
        }
    }
}

/// Coordinate with the largest integral range, its lower bound, and
/// that range.
fn widest_coordinate(region: &Polyhedron) -> Result<(usize, Int, Int)> {
    let k = region.ambient_dim();
    let mut best: Option<(usize, Int, Int)> = None;
    for j in 0..k {
        let (l, h) = region.coordinate_range(j)?;
        let lj = rat_ceil(&l);
        let spread = rat_floor(&h) - &lj;
        if best.as_ref().map_or(true, |(_, _, s)| spread > *s) {
            best = Some((j, lj, spread));
        }
    }
    best.ok_or_else(|| Error::BadInput("image region has no coordinates".into()))
}

/// Small primitive directions in the fiber chart, sign-canonicalized,
/// nearest first.
fn direction_candidates(r: usize) -> Vec<IntVector> {
    let mut out = Vec::new();
    for radius in 1..=2i64 {
        let mut cursor = vec![-radius; r];
        'shell: loop {
            let on_shell = cursor.iter().any(|&v| v.abs() == radius);
            let canonical = cursor
                .iter()
                .find(|&&v| v != 0)
                .map_or(false, |&first| first > 0);
            let primitive = cursor
                .iter()
                .fold(0i64, |g, &v| num_integer::gcd(g, v))
                == 1;
            if on_shell && canonical && primitive {
                out.push(IntVector::from_i64(&cursor));
            }
            let mut j = 0;
            loop {
                if j == r {
                    break 'shell;
                }
                cursor[j] += 1;
                if cursor[j] <= radius {
                    break;
                }
                cursor[j] = -radius;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn iv(vs: &[i64]) -> IntVector {
        IntVector::from_i64(vs)
    }

    fn proj(rows: &[&[i64]]) -> LatticeProjection {
        LatticeProjection::new(IntMatrix::from_i64(rows))
    }

    fn box_poly(lo: &[i64], hi: &[i64]) -> Polyhedron {
        let d = lo.len();
        let mut rows = Vec::new();
        for j in 0..d {
            rows.push((IntVector::unit(d, j), int(hi[j])));
            let mut neg = IntVector::zeros(d);
            neg.set_entry(j, int(-1));
            rows.push((neg, int(-lo[j])));
        }
        Polyhedron::from_rows(d, rows)
    }

    fn members_1d(f: &GenFun, lo: i64, hi: i64) -> BTreeSet<i64> {
        let coeffs = f.expand(&iv(&[lo]), &iv(&[hi])).unwrap();
        for c in coeffs.values() {
            assert_eq!(*c, rat(1, 1), "indicator expected");
        }
        coeffs.keys().map(|k| i64::try_from(k.entry(0)).unwrap()).collect()
    }

    /// Image points by brute force, for cross-checking.
    fn oracle_image(p: &Polyhedron, t: &LatticeProjection) -> oracle::PointSet {
        let pts = oracle::enumerate_lattice_points(p.matrix(), p.rhs()).unwrap();
        pts.image(t.matrix())
    }

    fn assert_matches_oracle(p: &Polyhedron, t: &LatticeProjection, f: &GenFun) {
        let image = oracle_image(p, t);
        let k = t.target_dim();
        let mut lo = vec![0i64; k];
        let mut hi = vec![0i64; k];
        for pt in image.iter() {
            for j in 0..k {
                let v = i64::try_from(pt.entry(j)).unwrap();
                lo[j] = lo[j].min(v - 1);
                hi[j] = hi[j].max(v + 1);
            }
        }
        let got = f.expand(&iv(&lo), &iv(&hi)).unwrap();
        let expect = image.indicator_in_box(&iv(&lo), &iv(&hi));
        let got_keys: BTreeSet<IntVector> = got.keys().cloned().collect();
        let expect_keys: BTreeSet<IntVector> = expect.keys().cloned().collect();
        assert_eq!(got_keys, expect_keys);
        assert!(got.values().all(|c| *c == rat(1, 1)), "images counted once");
        assert_eq!(count(f).unwrap(), rat(image.len() as i64, 1));
    }

    #[test]
    fn test_project_identity_is_polytope_genfun() {
        // The identity map changes nothing: same expansion as the
        // direct construction.
        let p = box_poly(&[0, 0], &[2, 2])
            .and_rows(&Polyhedron::from_rows(2, vec![(iv(&[1, 1]), int(3))]));
        let t = proj(&[&[1, 0], &[0, 1]]);
        let f = project_genfun(&p, &t).unwrap();
        let direct = polytope_genfun(&p).unwrap();
        let lo = iv(&[-1, -1]);
        let hi = iv(&[4, 4]);
        assert_eq!(f.expand(&lo, &hi).unwrap(), direct.expand(&lo, &hi).unwrap());
    }

    #[test]
    fn test_project_embeds_into_larger_lattice() {
        // A rank-one map into the plane: the segment lands on the line
        // m (1, 2), one point per source point.
        let p = box_poly(&[0], &[3]);
        let t = proj(&[&[1], &[2]]);
        let f = project_genfun(&p, &t).unwrap();
        assert_matches_oracle(&p, &t, &f);
    }

    #[test]
    fn test_project_sum_of_coordinates() {
        // Coordinate sums of the 4x4 grid of lattice points hit every
        // value from 0 to 6 exactly once.
        let p = box_poly(&[0, 0], &[3, 3]);
        let t = proj(&[&[1, 1]]);
        let f = project_genfun(&p, &t).unwrap();
        assert_eq!(members_1d(&f, -1, 7), (0..=6).collect());
        assert_eq!(count(&f).unwrap(), rat(7, 1));
    }

    #[test]
    fn test_project_semigroup_slice() {
        // Values 3a + 5b over the simplex ties out with semigroup
        // membership up to the cutoff.
        let p = Polyhedron::from_rows(
            2,
            vec![
                (iv(&[-1, 0]), int(0)),
                (iv(&[0, -1]), int(0)),
                (iv(&[3, 5]), int(20)),
            ],
        );
        let t = proj(&[&[3, 5]]);
        let f = project_genfun(&p, &t).unwrap();
        let members = members_1d(&f, -3, 20);
        let table = oracle::semigroup_membership(&[3, 5], 20);
        let expect: BTreeSet<i64> =
            (0..=20i64).filter(|&m| table[m as usize]).collect();
        assert_eq!(members, expect);
    }

    #[test]
    fn test_project_zero_map_collapses_to_origin() {
        let p = box_poly(&[0, 0], &[2, 2]);
        let t = proj(&[&[0, 0]]);
        let f = project_genfun(&p, &t).unwrap();
        assert_eq!(members_1d(&f, -2, 2), BTreeSet::from([0]));
    }

    #[test]
    fn test_project_empty_and_unbounded() {
        let empty = Polyhedron::from_rows(2, vec![(iv(&[0, 0]), int(-1))]);
        let t = proj(&[&[1, 1]]);
        assert!(project_genfun(&empty, &t).unwrap().is_zero());

        let ray = Polyhedron::from_rows(1, vec![(iv(&[-1]), int(0))]);
        let t1 = proj(&[&[1]]);
        assert!(matches!(project_genfun(&ray, &t1), Err(Error::Unbounded(_))));
    }

    /// Re-check the partition invariant: every integral image point is
    /// covered, and each piece's direction flattens each of its fibers.
    fn check_partition(p: &Polyhedron, t: &LatticeProjection) -> Vec<FiberPartitionPiece> {
        let pieces = partition(p, t).unwrap();
        let zero_fiber =
            solve_affine_lattice(t.matrix(), &IntVector::zeros(t.target_dim())).unwrap();
        let kernel_t = IntMatrix::from_cols(zero_fiber.kernel.clone()).transpose();
        for piece in &pieces {
            let c = kernel_t.mul_vec(&piece.direction);
            assert!(!c.is_zero(), "direction must see the fibers");
            let ys = integral_points(&piece.region, 10_000).unwrap();
            for y in &ys {
                if let Some(body) = fiber_body(p, t.matrix(), &kernel_t, y) {
                    let w = body.width_along(&c).unwrap();
                    let (min_width, _) = body.lattice_width().unwrap();
                    assert!(
                        w <= rat(1, 1) || w <= &min_width * &rat(2, 1),
                        "fiber over {y:?} is not flat along the piece direction"
                    );
                }
            }
        }
        // Every image point lies in some piece.
        let image = oracle_image(p, t);
        for y in image.iter() {
            assert!(
                pieces.iter().any(|piece| piece.region.contains_int(y)),
                "image point {y:?} not covered by the partition"
            );
        }
        pieces
    }

    #[test]
    fn test_partition_drop_coordinate() {
        // Dropping the second coordinate of the 4x4 box: vertical
        // fibers, all flat along the unit direction.
        let p = box_poly(&[0, 0], &[3, 3]);
        let t = proj(&[&[1, 0]]);
        let pieces = check_partition(&p, &t);
        assert!(!pieces.is_empty());
        // The interval [0, 3] should be kept whole: some piece covers
        // all four fibers at once.
        assert!(pieces
            .iter()
            .any(|piece| (0..=3).all(|y| piece.region.contains_int(&iv(&[y])))));
    }

    #[test]
    fn test_partition_triangle_with_point_fiber() {
        // The triangle 0 <= y <= 3 - x has a single-point fiber at
        // x = 3; widths shrink with x and stay flat everywhere.
        let p = Polyhedron::from_rows(
            2,
            vec![
                (iv(&[-1, 0]), int(0)),
                (iv(&[0, -1]), int(0)),
                (iv(&[1, 1]), int(3)),
            ],
        );
        let t = proj(&[&[1, 0]]);
        check_partition(&p, &t);
    }

    #[test]
    fn test_partition_rejects_injective_map() {
        let p = box_poly(&[0, 0], &[2, 2]);
        let t = proj(&[&[1, 0], &[0, 1]]);
        assert!(matches!(partition(&p, &t), Err(Error::BadInput(_))));
    }

    #[test]
    fn test_select_minimal_three_point_fiber() {
        // One fiber with last-coordinate values {2, 5, 7}: gaps are 3
        // and 2, so a margin of 3 leaves exactly the minimum.
        let f = GenFun::from_terms(
            2,
            vec![
                Term::monomial(rat(1, 1), iv(&[0, 2])),
                Term::monomial(rat(1, 1), iv(&[0, 5])),
                Term::monomial(rat(1, 1), iv(&[0, 7])),
            ],
        );
        let z = select_minimal(&f, 3).unwrap();
        let got = z.expand(&iv(&[0, 0]), &iv(&[0, 8])).unwrap();
        let keys: Vec<IntVector> = got.keys().cloned().collect();
        assert_eq!(keys, vec![iv(&[0, 2])]);
        assert_eq!(got[&iv(&[0, 2])], rat(1, 1));

        // Margin zero keeps the set untouched.
        let same = select_minimal(&f, 0).unwrap();
        assert_eq!(
            same.expand(&iv(&[0, 0]), &iv(&[0, 8])).unwrap(),
            f.expand(&iv(&[0, 0]), &iv(&[0, 8])).unwrap()
        );
    }

    #[test]
    fn test_select_minimal_matches_oracle() {
        // Random point sets in a strip: selection along the last
        // coordinate agrees with brute-force fiber minima whenever the
        // margin covers the widest possible gap.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let mut points = BTreeSet::new();
            for _ in 0..rng.gen_range(1..=10) {
                points.insert(iv(&[rng.gen_range(0..=3), rng.gen_range(0..=6)]));
            }
            let f = GenFun::from_terms(
                2,
                points
                    .iter()
                    .map(|p| Term::monomial(rat(1, 1), p.clone()))
                    .collect(),
            );
            let z = select_minimal(&f, 6).unwrap();
            let got = z.expand(&iv(&[0, 0]), &iv(&[3, 6])).unwrap();
            let got_keys: BTreeSet<IntVector> = got.keys().cloned().collect();
            let expect = oracle::PointSet::from_points(2, points.iter().cloned())
                .fiber_minima(1);
            let expect_keys: BTreeSet<IntVector> = expect.iter().cloned().collect();
            assert_eq!(got_keys, expect_keys);
        }
    }

    #[test]
    fn test_project_random_matches_oracle() {
        // End to end on random polytopes and maps, against brute-force
        // images.
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for round in 0..18 {
            let d = if round < 12 { 2 } else { 3 };
            let k = if d == 2 { 1 } else { rng.gen_range(1..=2) };
            let mut rows = Vec::new();
            for j in 0..d {
                rows.push((IntVector::unit(d, j), int(rng.gen_range(1..=3))));
                let mut neg = IntVector::zeros(d);
                neg.set_entry(j, int(-1));
                rows.push((neg, int(rng.gen_range(0..=2))));
            }
            let cut = IntVector::new((0..d).map(|_| int(rng.gen_range(-2..=2))).collect());
            if !cut.is_zero() {
                rows.push((cut, int(rng.gen_range(1..=5))));
            }
            let p = Polyhedron::from_rows(d, rows);
            let t_mat = IntMatrix::from_rows(
                (0..k)
                    .map(|_| IntVector::new((0..d).map(|_| int(rng.gen_range(-2..=2))).collect()))
                    .collect(),
            );
            let t = LatticeProjection::new(t_mat);
            let f = project_genfun(&p, &t).unwrap();
            if p.is_empty() {
                assert!(f.is_zero());
                continue;
            }
            assert_matches_oracle(&p, &t, &f);
        }
    }

    #[test]
    fn test_gap_bound_on_certified_fibers() {
        // The working assumption behind the margins: along a direction
        // within twice the lattice width, consecutive lattice values
        // never skip more than the flatness bound.
        let config = FlatnessConfig::default();
        let bound = config.margin_bound(2);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..25 {
            let mut rows = Vec::new();
            for j in 0..2 {
                rows.push((IntVector::unit(2, j), int(rng.gen_range(2..=6))));
                let mut neg = IntVector::zeros(2);
                neg.set_entry(j, int(-1));
                rows.push((neg, int(rng.gen_range(0..=2))));
            }
            let cut = iv(&[rng.gen_range(-2..=2), rng.gen_range(-2..=2)]);
            if !cut.is_zero() {
                rows.push((cut, int(rng.gen_range(2..=8))));
            }
            let b = Polyhedron::from_rows(2, rows);
            if b.is_empty() {
                continue;
            }
            let (_, c) = b.lattice_width().unwrap();
            let pts = oracle::enumerate_lattice_points(b.matrix(), b.rhs()).unwrap();
            let mut values: Vec<i64> = pts
                .iter()
                .map(|p| i64::try_from(c.dot(p)).unwrap())
                .collect();
            values.sort();
            values.dedup();
            for pair in values.windows(2) {
                assert!(pair[1] - pair[0] <= bound, "gap beyond the flatness bound");
            }
        }
    }

    #[test]
    fn test_project_composition_count() {
        // Counting after projecting equals the size of the image set.
        let p = box_poly(&[0, 0], &[4, 4])
            .and_rows(&Polyhedron::from_rows(2, vec![(iv(&[1, -1]), int(2))]));
        let t = proj(&[&[2, 3]]);
        let f = project_genfun(&p, &t).unwrap();
        let image = oracle_image(&p, &t);
        assert_eq!(count(&f).unwrap(), rat(image.len() as i64, 1));
    }
}
