//! Exact LLL lattice basis reduction.
//!
//! Reduction runs entirely over rationals (Gram-Schmidt data is kept
//! exact), with the classical parameter `delta = 3/4` by default.  The
//! output basis generates the same lattice as the input and its first
//! vector is short in the usual LLL sense, which is what the cone
//! decomposition and width search need.

use super::{rat, IntVector, Rational};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// Gram-Schmidt data for the current basis: `mu[i][j]` for `j < i` and
/// the squared norms of the orthogonalized vectors.
struct Gram {
    mu: Vec<Vec<Rational>>,
    norms: Vec<Rational>,
}

fn gram_schmidt(basis: &[IntVector]) -> Result<Gram> {
    let n = basis.len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<Rational> = basis[i].to_rat();
        for j in 0..i {
            let dot = basis[i].dot_rat(&star[j]);
            let m = &dot / &norms[j];
            for (vk, sk) in v.iter_mut().zip(star[j].iter()) {
                *vk -= &m * sk;
            }
            mu[i][j] = m;
        }
        let norm: Rational = v.iter().map(|e| e * e).sum();
        if norm.is_zero() {
            return Err(Error::DependentInput(format!(
                "vector {i} lies in the span of the previous ones"
            )));
        }
        star.push(v);
        norms.push(norm);
    }
    Ok(Gram { mu, norms })
}

/// LLL-reduce an independent set of integer vectors with `delta = 3/4`.
pub fn lll_reduce(basis: &[IntVector]) -> Result<Vec<IntVector>> {
    lll_reduce_with(basis, &rat(3, 4))
}

/// LLL reduction with an explicit parameter `1/4 < delta < 1`.
///
/// Gram-Schmidt data is recomputed after every swap; at the dimensions
/// this crate works in, clarity beats the incremental update.
pub fn lll_reduce_with(basis: &[IntVector], delta: &Rational) -> Result<Vec<IntVector>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let dim = basis[0].dim();
    if basis.iter().any(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch("lll basis".into()));
    }
    let mut b: Vec<IntVector> = basis.to_vec();
    let mut g = gram_schmidt(&b)?;
    let n = b.len();
    let half = rat(1, 2);
    let mut k = 1;
    while k < n {
        // Size-reduce b[k] against earlier vectors.
        for j in (0..k).rev() {
            if g.mu[k][j].abs() > half {
                let r = g.mu[k][j].round().to_integer();
                b[k] = &b[k] - &b[j].scale(&r);
                g = gram_schmidt(&b)?;
            }
        }
        // Lovász condition between k-1 and k.
        let lhs = &g.norms[k];
        let rhs = (delta - &(&g.mu[k][k - 1] * &g.mu[k][k - 1])) * &g.norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            g = gram_schmidt(&b)?;
            k = k.max(2) - 1;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, solve_affine_lattice, IntMatrix};

    /// The reduced basis must generate the same lattice: each original
    /// vector is an integer combination of the reduced ones and vice
    /// versa.
    fn same_lattice(a: &[IntVector], b: &[IntVector]) -> bool {
        let expr = |vs: &[IntVector], w: &IntVector| {
            let m = IntMatrix::from_cols(vs.to_vec());
            solve_affine_lattice(&m, w).is_some()
        };
        a.iter().all(|w| expr(b, w)) && b.iter().all(|w| expr(a, w))
    }

    #[test]
    fn test_lll_plane() {
        let basis = vec![IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[4, 1])];
        let red = lll_reduce(&basis).unwrap();
        assert!(same_lattice(&basis, &red));
        // The lattice is all of Z^2, so some reduced vector has norm 1.
        assert!(red.iter().any(|v| v.norm_sq() == int(1)));
    }

    #[test]
    fn test_lll_rejects_dependent() {
        let v = IntVector::from_i64(&[201, 37]);
        assert!(lll_reduce(&[v.clone()]).is_ok());
        assert!(matches!(
            lll_reduce(&[v.clone(), v]),
            Err(Error::DependentInput(_))
        ));
    }

    #[test]
    fn test_lll_classic_example() {
        let basis = vec![
            IntVector::from_i64(&[1, 1, 1]),
            IntVector::from_i64(&[-1, 0, 2]),
            IntVector::from_i64(&[3, 5, 6]),
        ];
        let red = lll_reduce(&basis).unwrap();
        assert!(same_lattice(&basis, &red));
        // First vector should be no longer than the classic bound
        // 2^((n-1)/2) * det^(1/n); for this lattice a vector of squared
        // norm <= 2 exists and LLL finds one of squared norm <= 3.
        assert!(red[0].norm_sq() <= int(3));
    }

    #[test]
    fn test_lll_random_lattices() {
        let mut seed: i64 = 987;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 9 - 4
        };
        for _ in 0..25 {
            let dim = 3;
            let mut vs = Vec::new();
            for _ in 0..dim {
                vs.push(IntVector::new((0..dim).map(|_| int(next())).collect()));
            }
            let m = IntMatrix::from_cols(vs.clone());
            if m.det().is_zero() {
                continue;
            }
            let red = lll_reduce(&vs).unwrap();
            assert!(same_lattice(&vs, &red));
            // Ordered roughly by size: the first vector is the shortest
            // of the reduced ones up to the LLL factor; sanity-check it
            // is no longer than any input vector times 2^(n-1).
            let min_in = vs.iter().map(|v| v.norm_sq()).min().unwrap();
            assert!(red[0].norm_sq() <= min_in * int(4));
        }
    }
}
