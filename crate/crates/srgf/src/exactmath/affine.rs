//! Integral solutions of affine systems `A x = b`.
//!
//! Via Smith normal form `U A V = D` the system becomes diagonal: with
//! `c = U b` and `y = V^{-1} x`, each `d_i y_i = c_i` either pins `y_i`
//! or (for `d_i = 0`) forces `c_i = 0`.  The full solution set is a
//! particular point plus the lattice spanned by the kernel columns of
//! `V`.  This is how lower-dimensional polyhedra are reparametrized onto
//! full-dimensional lattices and how membership in a sublattice is
//! decided.

use super::{smith_normal_form, Int, IntMatrix, IntVector};
use num_traits::Zero;

/// The integral solution set of `A x = b`: `point + Z-span(kernel)`.
#[derive(Clone, Debug)]
pub struct AffineLatticeSolution {
    /// One integral solution.
    pub point: IntVector,
    /// Basis of the integral kernel lattice `{x : A x = 0}`.
    pub kernel: Vec<IntVector>,
}

/// Solve `A x = b` over the integers; `None` when no integral solution
/// exists.
pub fn solve_affine_lattice(a: &IntMatrix, b: &IntVector) -> Option<AffineLatticeSolution> {
    assert_eq!(a.rows(), b.dim(), "system shape mismatch");
    let rows = a.rows();
    let cols = a.cols();
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(b);
    let steps = rows.min(cols);
    let mut y = IntVector::zeros(cols);
    for t in 0..rows {
        let d_t = if t < steps { s.d.get(t, t).clone() } else { Int::zero() };
        if d_t.is_zero() {
            if !c.entry(t).is_zero() {
                return None;
            }
        } else {
            let rem = c.entry(t) % &d_t;
            if !rem.is_zero() {
                return None;
            }
            y.set_entry(t, c.entry(t) / &d_t);
        }
    }
    let point = s.v.mul_vec(&y);
    let mut kernel = Vec::new();
    for t in 0..cols {
        let free = t >= steps || s.d.get(t, t).is_zero();
        if free {
            kernel.push(s.v.col(t));
        }
    }
    Some(AffineLatticeSolution { point, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, IntMatrix, IntVector};
    use num_traits::Signed;

    #[test]
    fn test_line_in_plane() {
        // x + y = 2 over Z^2: point (2,0)-like, kernel spanned by (1,-1).
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        let b = IntVector::from_i64(&[2]);
        let sol = solve_affine_lattice(&a, &b).unwrap();
        assert_eq!(sol.point.entry(0) + sol.point.entry(1), int(2));
        assert_eq!(sol.kernel.len(), 1);
        let k = &sol.kernel[0];
        assert_eq!(k.entry(0) + k.entry(1), int(0));
        assert!(!k.is_zero());
    }

    #[test]
    fn test_no_integral_solution() {
        // 2x = 1 has no integer solution.
        let a = IntMatrix::from_i64(&[&[2]]);
        let b = IntVector::from_i64(&[1]);
        assert!(solve_affine_lattice(&a, &b).is_none());
        // Inconsistent real system.
        let a2 = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let b2 = IntVector::from_i64(&[0, 1]);
        assert!(solve_affine_lattice(&a2, &b2).is_none());
    }

    #[test]
    fn test_zero_matrix() {
        let a = IntMatrix::zeros(1, 2);
        let b = IntVector::from_i64(&[0]);
        let sol = solve_affine_lattice(&a, &b).unwrap();
        assert!(sol.point.is_zero());
        assert_eq!(sol.kernel.len(), 2);
        // The kernel basis spans Z^2.
        let m = IntMatrix::from_cols(sol.kernel.clone());
        assert_eq!(m.det().abs(), int(1));
    }

    #[test]
    fn test_solution_verifies() {
        let a = IntMatrix::from_i64(&[&[23, 29, 44]]);
        let b = IntVector::from_i64(&[161]);
        let sol = solve_affine_lattice(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&sol.point), b);
        for k in &sol.kernel {
            assert!(a.mul_vec(k).is_zero());
        }
        assert_eq!(sol.kernel.len(), 2);
    }

    #[test]
    fn test_membership_queries() {
        // Lattice spanned by (2,0) and (0,3): membership of (4,3) yes,
        // (1,0) no.
        let basis = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).transpose();
        assert!(solve_affine_lattice(&basis, &IntVector::from_i64(&[4, 3])).is_some());
        assert!(solve_affine_lattice(&basis, &IntVector::from_i64(&[1, 0])).is_none());
    }
}
