//! Relative interiors and patching piecewise enumerations together.
//!
//! The lattice points in the relative interior of a polytope are an
//! alternating sum over its face lattice:
//! `(-1)^{dim P} sum_F (-1)^{dim F} f(F)`.  Patching uses this to glue
//! piecewise results: given pieces `(Q_i, f_i)` whose region interiors
//! are pairwise disjoint and jointly cover the set, each piece
//! contributes its function restricted to the region's interior.

use super::{count, intersect, GenFun};
use crate::barvinok::polytope_genfun;
use crate::polyhedra::Polyhedron;
use crate::Result;
use num_traits::Zero;

/// Generating function of the lattice points strictly inside a
/// polytope (relative to its affine hull).  A point is its own
/// interior.
pub fn interior_genfun(p: &Polyhedron) -> Result<GenFun> {
    let d = p.ambient_dim();
    if p.is_empty() {
        return Ok(GenFun::zero(d));
    }
    let dim_p = p.affine_dim()?;
    let mut total = GenFun::zero(d);
    for face in p.faces()? {
        let g = polytope_genfun(&face.polyhedron)?;
        if (dim_p + face.dim) % 2 == 0 {
            total = total.add(&g);
        } else {
            total = total.sub(&g);
        }
    }
    Ok(total)
}

/// Combine piecewise enumerations: every piece restricts its function
/// to the relative interior of its region, and the restrictions sum.
/// Regions must have pairwise disjoint interiors that jointly cover
/// the enumerated set.
///
/// Pieces whose restriction holds no points are dropped outright: the
/// restrictions are indicators of finite sets, so a zero count
/// certifies the zero function, and keeping such term lists around
/// would bloat every later operation on the result.
pub fn patch(pieces: &[(Polyhedron, GenFun)]) -> Result<GenFun> {
    assert!(!pieces.is_empty(), "patching needs at least one piece");
    let d = pieces[0].1.dim();
    let mut total = GenFun::zero(d);
    for (region, f) in pieces {
        assert_eq!(region.ambient_dim(), d, "piece region dimension mismatch");
        if f.is_zero() {
            continue;
        }
        let inner = interior_genfun(region)?;
        if inner.is_zero() || count(&inner)?.is_zero() {
            continue;
        }
        let restricted = intersect(f, &inner)?;
        if count(&restricted)?.is_zero() {
            continue;
        }
        total = total.add(&restricted);
    }
    Ok(total)
}
