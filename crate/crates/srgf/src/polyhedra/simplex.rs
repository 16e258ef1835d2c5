//! Exact two-phase simplex over the rationals.
//!
//! Dense textbook tableau with Bland's anti-cycling rule; every entry is
//! a [`Rational`], so optima, certificates, and infeasibility verdicts
//! are exact.  Instance sizes in this crate are small (tens of rows and
//! columns), which the dense representation handles comfortably.

use crate::exactmath::{rat_int, IntMatrix, IntVector, Rational};
use num_traits::{One, Signed, Zero};

/// Outcome of an exact linear program.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// A finite optimum, attained at `point`.
    Optimal { value: Rational, point: Vec<Rational> },
    /// Feasible, but the objective increases without bound.
    Unbounded,
    /// No feasible point.
    Infeasible,
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Maximize `c . x` over `{x in R^d : A x <= b}` with `x` unrestricted
/// in sign.
pub fn lp_maximize(a: &IntMatrix, b: &IntVector, c: &[Rational]) -> LpOutcome {
    let m = a.rows();
    let d = a.cols();
    assert_eq!(c.len(), d, "objective of wrong dimension");
    // Standard form via x = u - v (u, v >= 0) and slacks s >= 0:
    //   A u - A v + s = b,  with each row sign-normalized to rhs >= 0.
    let n = 2 * d + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); n];
        for j in 0..d {
            let v = rat_int(a.get(i, j));
            row[d + j] = -&v;
            row[j] = v;
        }
        row[2 * d + i] = Rational::one();
        let mut bi = rat_int(b.entry(i));
        if bi.is_negative() {
            for e in row.iter_mut() {
                *e = -(e.clone());
            }
            bi = -bi;
        }
        rows.push(row);
        rhs.push(bi);
    }
    let mut obj = vec![Rational::zero(); n];
    for j in 0..d {
        obj[d + j] = -&c[j];
        obj[j] = c[j].clone();
    }
    match solve_standard(rows, rhs, obj) {
        StandardOutcome::Infeasible => LpOutcome::Infeasible,
        StandardOutcome::Unbounded => LpOutcome::Unbounded,
        StandardOutcome::Optimal { value, solution } => {
            let point: Vec<Rational> = (0..d)
                .map(|j| &solution[j] - &solution[d + j])
                .collect();
            LpOutcome::Optimal { value, point }
        }
    }
}

/// Minimize `c . x` over `{x : A x <= b}`.
pub fn lp_minimize(a: &IntMatrix, b: &IntVector, c: &[Rational]) -> LpOutcome {
    let neg: Vec<Rational> = c.iter().map(|v| -v).collect();
    match lp_maximize(a, b, &neg) {
        LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
            value: -value,
            point,
        },
        other => other,
    }
}

enum StandardOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
}

/// Maximize `obj . z` subject to `rows . z = rhs`, `z >= 0`, where every
/// `rhs` entry is nonnegative.  Two phases with artificial variables.
fn solve_standard(
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    obj: Vec<Rational>,
) -> StandardOutcome {
    let m = rows.len();
    let n = obj.len();
    // Tableau: m rows of n + m (artificials) + 1 (rhs) entries.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in rows.into_iter().enumerate() {
        debug_assert!(!rhs[i].is_negative());
        let mut r = row;
        r.resize(width, Rational::zero());
        r[n + i] = Rational::one();
        r[width - 1] = rhs[i].clone();
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximize minus the sum of artificials.  The canonical
    // cost row prices out the initial artificial basis, leaving the
    // column sums over the structural part.
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] += &row[j];
        }
        cost[width - 1] += &row[width - 1];
    }
    if !pivot_to_optimum(&mut t, &mut cost, &mut basis, n + m) {
        unreachable!("phase 1 objective is bounded above by zero");
    }
    // Optimal phase-1 value is -cost[rhs]; cost[rhs] accumulated +rhs.
    if !cost[width - 1].is_zero() {
        return StandardOutcome::Infeasible;
    }

    // Drive leftover artificials out of the basis, dropping rows that
    // turn out to be redundant.
    let mut keep: Vec<bool> = vec![true; t.len()];
    for i in 0..t.len() {
        if basis[i] < n {
            continue;
        }
        match (0..n).find(|&j| !t[i][j].is_zero()) {
            Some(j) => pivot(&mut t, &mut cost, &mut basis, i, j),
            None => keep[i] = false,
        }
    }
    let mut tt = Vec::new();
    let mut bb = Vec::new();
    for (i, row) in t.into_iter().enumerate() {
        if keep[i] {
            // Truncate the artificial columns, keep the rhs.
            let mut r: Vec<Rational> = row[..n].to_vec();
            r.push(row[width - 1].clone());
            tt.push(r);
            bb.push(basis[i]);
        }
    }
    let mut t = tt;
    let mut basis = bb;
    let width = n + 1;

    // Phase 2: the real objective, priced out against the current basis.
    let mut cost = vec![Rational::zero(); width];
    cost[..n].clone_from_slice(&obj);
    for (i, &bi) in basis.iter().enumerate() {
        if !cost[bi].is_zero() {
            let factor = cost[bi].clone();
            for j in 0..width {
                let v = &cost[j] - &factor * &t[i][j];
                cost[j] = v;
            }
        }
    }
    if !pivot_to_optimum(&mut t, &mut cost, &mut basis, n) {
        return StandardOutcome::Unbounded;
    }
    let mut solution = vec![Rational::zero(); n];
    for (i, &bi) in basis.iter().enumerate() {
        solution[bi] = t[i][width - 1].clone();
    }
    let mut value = Rational::zero();
    for j in 0..n {
        value += &obj[j] * &solution[j];
    }
    StandardOutcome::Optimal { value, solution }
}

/// Run Bland-rule pivots until optimal.  Returns false when the
/// objective is unbounded.  `ncols` is the number of structural columns
/// eligible to enter (everything before it in the tableau).
fn pivot_to_optimum(
    t: &mut [Vec<Rational>],
    cost: &mut [Rational],
    basis: &mut [usize],
    ncols: usize,
) -> bool {
    loop {
        // Bland: entering column is the smallest index with positive
        // reduced profit.
        let Some(enter) = (0..ncols).find(|&j| cost[j].is_positive()) else {
            return true;
        };
        let width = cost.len();
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for i in 0..t.len() {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &best {
                None => true,
                Some(b) => {
                    ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                }
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        let Some(leave) = leave else {
            return false;
        };
        pivot(t, cost, basis, leave, enter);
    }
}

/// Pivot the tableau on `(row, col)`, updating the cost row and basis.
fn pivot(
    t: &mut [Vec<Rational>],
    cost: &mut [Rational],
    basis: &mut [usize],
    row: usize,
    col: usize,
) {
    let width = cost.len();
    let piv = t[row][col].clone();
    debug_assert!(!piv.is_zero());
    for j in 0..width {
        let v = &t[row][j] / &piv;
        t[row][j] = v;
    }
    for i in 0..t.len() {
        if i == row || t[i][col].is_zero() {
            continue;
        }
        let factor = t[i][col].clone();
        for j in 0..width {
            let v = &t[i][j] - &factor * &t[row][j];
            t[i][j] = v;
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for j in 0..width {
            let v = &cost[j] - &factor * &t[row][j];
            cost[j] = v;
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, IntMatrix, IntVector};

    fn rats(vs: &[i64]) -> Vec<Rational> {
        vs.iter().map(|&v| rat(v, 1)).collect()
    }

    #[test]
    fn test_lp_square() {
        // Maximize x + y over the unit square.
        let a = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = IntVector::from_i64(&[1, 0, 1, 0]);
        match lp_maximize(&a, &b, &rats(&[1, 1])) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(2, 1));
                assert_eq!(point, rats(&[1, 1]));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn test_lp_fractional_vertex() {
        // Maximize y over x, y >= 0, 23x + 29y <= 100: optimum 100/29.
        let a = IntMatrix::from_i64(&[&[-1, 0], &[0, -1], &[23, 29]]);
        let b = IntVector::from_i64(&[0, 0, 100]);
        match lp_maximize(&a, &b, &rats(&[0, 1])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(100, 29)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn test_lp_unbounded_and_infeasible() {
        let a = IntMatrix::from_i64(&[&[-1]]);
        let b = IntVector::from_i64(&[0]); // x >= 0
        assert_eq!(lp_maximize(&a, &b, &rats(&[1])), LpOutcome::Unbounded);
        let a2 = IntMatrix::from_i64(&[&[1], &[-1]]);
        let b2 = IntVector::from_i64(&[0, -1]); // x <= 0, x >= 1
        assert_eq!(lp_maximize(&a2, &b2, &rats(&[1])), LpOutcome::Infeasible);
    }

    #[test]
    fn test_lp_negative_orthant() {
        // Feasible region entirely at negative coordinates; exercises the
        // free-variable splitting.
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let b = IntVector::from_i64(&[-1, -1, 10]);
        match lp_maximize(&a, &b, &rats(&[1, 1])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(-2, 1)),
            other => panic!("expected optimum, got {other:?}"),
        }
        match lp_minimize(&a, &b, &rats(&[1, 1])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(-10, 1)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn test_lp_degenerate_cycling_guard() {
        // A classic degenerate instance; Bland's rule must terminate.
        let a = IntMatrix::from_i64(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[-1, 0, 0],
            &[0, -1, 0],
            &[0, 0, -1],
            &[1, 1, 1],
        ]);
        let b = IntVector::from_i64(&[1, 1, 1, 0, 0, 0, 2]);
        match lp_maximize(&a, &b, &rats(&[1, 1, 1])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(2, 1)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
