//! Rational Gaussian elimination: solving, rank, inverse, kernel.
//!
//! These are the workhorses behind vertex enumeration, facet normals,
//! and span computations.  Everything is exact; pivots are chosen as the
//! first nonzero entry in the column.

use super::Rational;
use num_traits::{One, Zero};

fn row_echelon(a: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a[i][c].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..cols {
            let v = &a[r][j] * &inv;
            a[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    pivot_cols
}

/// Rank of a rational matrix given as rows.
pub fn rat_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    row_echelon(&mut a).len()
}

/// Solve the square system `A x = b` exactly; `None` when `A` is singular.
pub fn rat_solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "non-square system");
    assert_eq!(b.len(), n);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Exact inverse of a square rational matrix; `None` when singular.
pub fn rat_invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "non-square matrix");
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            r
        })
        .collect();
    let pivots = row_echelon(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| aug[i][n + j].clone()).collect())
            .collect(),
    )
}

/// Basis of the rational null space of `A` (rows of `A` given).
pub fn rat_kernel(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut a = rows.to_vec();
    let pivots = row_echelon(&mut a);
    let mut basis = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}
