//! Todd polynomials and the series arithmetic behind specialization.
//!
//! The scalar engine is the power series `t/(1 - e^{-t}) = sum h_m t^m`
//! with `h_0 = 1, h_1 = 1/2, h_2 = 1/12, h_3 = 0, ...`, obtained by
//! exact inversion of `(1 - e^{-t})/t`.  The symbolic Todd polynomial
//! `td_j(xi_1..xi_l)` is the coefficient of `tau^j` in
//! `prod_i (tau xi_i) / (1 - e^{-tau xi_i})`.

use crate::exactmath::{Int, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Coefficients `h_0..h_order` of `t/(1 - e^{-t})`.
pub(crate) fn inv_todd_coeffs(order: usize) -> Vec<Rational> {
    // g(t) = (1 - e^{-t})/t has g_m = (-1)^m / (m+1)!.
    let mut g = Vec::with_capacity(order + 1);
    let mut fact = Int::one();
    for m in 0..=order {
        fact *= Int::from(m as i64 + 1);
        let sign = if m % 2 == 0 { Int::one() } else { -Int::one() };
        g.push(Rational::new(sign, fact.clone()));
    }
    // h = 1/g by the standard recurrence (g_0 = 1).
    let mut h = vec![Rational::zero(); order + 1];
    h[0] = Rational::one();
    for m in 1..=order {
        let mut acc = Rational::zero();
        for i in 1..=m {
            acc += &g[i] * &h[m - i];
        }
        h[m] = -acc;
    }
    h
}

/// Coefficients `1/m!` of `e^t` up to the given order.
pub(crate) fn exp_coeffs(order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut fact = Int::one();
    out.push(Rational::one());
    for m in 1..=order {
        fact *= Int::from(m as i64);
        out.push(Rational::new(Int::one(), fact.clone()));
    }
    out
}

/// A multivariate polynomial with exact rational coefficients, indexed
/// by exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        MultiPoly { vars, coeffs: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.coeffs.insert(vec![0; vars], c);
        }
        p
    }

    /// The monomial `c * xi_i^e`.
    pub fn monomial(vars: usize, i: usize, e: u32, c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            let mut exp = vec![0; vars];
            exp[i] = e;
            p.coeffs.insert(exp, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let slot = out.coeffs.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars);
        let mut out = MultiPoly::zero(self.vars);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                let slot = out.coeffs.entry(e).or_insert_with(Rational::zero);
                *slot += c1 * c2;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn eval(&self, xi: &[Rational]) -> Rational {
        assert_eq!(xi.len(), self.vars);
        let mut total = Rational::zero();
        for (e, c) in &self.coeffs {
            let mut v = c.clone();
            for (x, &p) in xi.iter().zip(e.iter()) {
                for _ in 0..p {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }
}

/// Todd polynomials `td_0 .. td_order` in `vars` variables.
#[derive(Clone, Debug)]
pub struct ToddExpansion {
    vars: usize,
    polys: Vec<MultiPoly>,
}

impl ToddExpansion {
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn td(&self, j: usize) -> &MultiPoly {
        &self.polys[j]
    }
}

/// Expand `prod_{i=1..vars} (tau xi_i)/(1 - e^{-tau xi_i})` through
/// `tau^order`; entry `j` of the result is the coefficient of `tau^j`.
pub fn todd_polynomials(vars: usize, order: usize) -> ToddExpansion {
    let h = inv_todd_coeffs(order);
    // Series in tau with MultiPoly coefficients, truncated past `order`.
    let mut acc: Vec<MultiPoly> = (0..=order)
        .map(|j| {
            if j == 0 {
                MultiPoly::constant(vars, Rational::one())
            } else {
                MultiPoly::zero(vars)
            }
        })
        .collect();
    for i in 0..vars {
        let factor: Vec<MultiPoly> = (0..=order)
            .map(|m| MultiPoly::monomial(vars, i, m as u32, h[m].clone()))
            .collect();
        let mut next = vec![MultiPoly::zero(vars); order + 1];
        for j in 0..=order {
            for m in 0..=order - j {
                if acc[j].is_zero() || factor[m].is_zero() {
                    continue;
                }
                next[j + m] = next[j + m].add(&acc[j].mul(&factor[m]));
            }
        }
        acc = next;
    }
    ToddExpansion { vars, polys: acc }
}
