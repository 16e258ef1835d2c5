//! Smith normal form over the integers.
//!
//! For an integer matrix `M` this computes unimodular `U`, `V` with
//! `U * M * V = D`, where `D` is diagonal with nonnegative entries and
//! each diagonal entry divides the next.  The decomposition drives
//! integral solving of linear systems and lattice normalization.

use super::{Int, IntMatrix};
use num_traits::{One, Signed, Zero};

/// Result of [`smith_normal_form`]: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form of `m`.
///
/// Row operations accumulate into `U`, column operations into `V`; both
/// stay unimodular throughout.  Pivots are chosen with minimal absolute
/// value to keep intermediate entries small.  Whenever some entry of the
/// trailing block is not divisible by the current pivot, the offending
/// row is added to the pivot row and reduction restarts, which makes the
/// diagonal divisibility chain hold by construction.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Smallest-magnitude nonzero pivot in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if d.get(pi, pj).abs() <= d.get(i, j).abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Trailing block is zero; done with this and all later steps.
                return finish(u, d, v, t);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = div_round(d.get(i, t), d.get(t, t));
                if !q.is_zero() {
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                }
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // Clear row t beyond the pivot.
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = div_round(d.get(t, j), d.get(t, t));
                if !q.is_zero() {
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                }
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Remainders left behind are smaller than the pivot;
                // rerun with a smaller pivot.
                continue;
            }

            // Enforce divisibility of the remaining block by the pivot.
            let p = d.get(t, t).clone();
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(d.get(i, j) % &p).is_zero() {
                        row_add(&mut d, t, i);
                        row_add(&mut u, t, i);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(u, d, v, steps)
}

/// Normalize diagonal signs from position `done` back to the start.
fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix, _done: usize) -> SmithDecomposition {
    let n = d.rows().min(d.cols());
    for t in 0..n {
        if d.get(t, t).is_negative() {
            for j in 0..d.cols() {
                let neg = -d.get(t, j);
                d.set(t, j, neg);
            }
            for j in 0..u.cols() {
                let neg = -u.get(t, j);
                u.set(t, j, neg);
            }
        }
    }
    SmithDecomposition { u, d, v }
}

/// Quotient rounding toward nearest, which keeps remainders at most
/// half the divisor in magnitude.
fn div_round(a: &Int, b: &Int) -> Int {
    let two_rem: Int = (a % b) * Int::from(2);
    let q = a / b;
    if two_rem.abs() > b.abs() {
        if two_rem.is_negative() == b.is_negative() {
            q + Int::one()
        } else {
            q - Int::one()
        }
    } else {
        q
    }
}

fn row_sub(m: &mut IntMatrix, target: usize, src: usize, q: &Int) {
    for j in 0..m.cols() {
        let v = m.get(target, j) - q * m.get(src, j);
        m.set(target, j, v);
    }
}

fn row_add(m: &mut IntMatrix, target: usize, src: usize) {
    for j in 0..m.cols() {
        let v = m.get(target, j) + m.get(src, j);
        m.set(target, j, v);
    }
}

fn col_sub(m: &mut IntMatrix, target: usize, src: usize, q: &Int) {
    for i in 0..m.rows() {
        let v = m.get(i, target) - q * m.get(i, src);
        m.set(i, target, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, IntMatrix};
    use num_traits::{One, Signed, Zero};

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        // U M V = D
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        // unimodular transforms
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        // diagonal, nonnegative, divisibility chain
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", diag);
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn test_snf_2x2() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![int(2), int(4)]);
    }

    #[test]
    fn test_snf_zero_and_identity() {
        let z = IntMatrix::zeros(2, 3);
        let s = check(&z);
        assert_eq!(s.diagonal(), vec![int(0), int(0)]);
        let id = IntMatrix::identity(3);
        let s = check(&id);
        assert_eq!(s.diagonal(), vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn test_snf_rectangular() {
        let m = IntMatrix::from_i64(&[&[1, 1, 23], &[0, 5, 10]]);
        let s = check(&m);
        assert_eq!(s.diagonal().len(), 2);
        let m2 = IntMatrix::from_i64(&[&[6], &[10], &[15]]);
        let s2 = check(&m2);
        assert_eq!(s2.diagonal(), vec![int(1)]);
    }

    #[test]
    fn test_snf_divisibility_stress() {
        // A matrix known to need the divisibility fix-up.
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn test_snf_random_identities() {
        // Deterministic pseudo-random small matrices.
        let mut seed: i64 = 12345;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 7 - 3
        };
        for rows in 1..=4usize {
            for cols in 1..=4usize {
                let mut m = IntMatrix::zeros(rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        m.set(i, j, int(next()));
                    }
                }
                check(&m);
            }
        }
    }
}
