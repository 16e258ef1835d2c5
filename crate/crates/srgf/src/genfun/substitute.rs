//! Monomial substitution and counting.
//!
//! Substituting `x_i = z^{l_i}` into a term is immediate while no
//! denominator exponent maps to zero.  When some do, the term has a
//! pole exactly at the image point, and the function is evaluated as
//! the constant term of a one-parameter perturbation `x_i = z^{l_i}
//! e^{tau v_i}`: each factor expands into a short Laurent series in
//! `tau` whose coefficients are again rational-function atoms, the
//! series multiply out truncated at `tau^0`, and the negative powers
//! must cancel across terms (otherwise the substitution diverges).

use super::todd::{exp_coeffs, inv_todd_coeffs};
use super::{GenFun, MonomialMap, Term};
use crate::exactmath::{rat_int, Int, IntVector, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Apply a monomial map to a generating function.
///
/// The result enumerates the image multiset; when the map is injective
/// on the support the image is again a lattice-point set.  Terms keep
/// at most as many denominator factors as they had.
pub fn substitute(f: &GenFun, map: &MonomialMap) -> Result<GenFun> {
    assert_eq!(map.source_dim(), f.dim(), "map source dimension mismatch");
    let n = map.target_dim();
    let any_dead = f
        .terms()
        .iter()
        .flat_map(|t| t.denominators.iter())
        .any(|a| map.apply(a).is_zero());
    if !any_dead {
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                Term::new(
                    t.coefficient.clone(),
                    map.apply(&t.numerator),
                    t.denominators.iter().map(|a| map.apply(a)).collect(),
                )
            })
            .collect();
        return Ok(GenFun::from_terms(n, terms));
    }

    // Perturbation direction: nonzero against every denominator that
    // dies under the map.
    let dead: Vec<&IntVector> = f
        .terms()
        .iter()
        .flat_map(|t| t.denominators.iter())
        .filter(|a| map.apply(a).is_zero())
        .collect();
    let v = super::generic_direction(f.dim(), &dead)?;

    let mut constant_atoms: Vec<Term> = Vec::new();
    let mut negative_atoms: BTreeMap<i64, Vec<Term>> = BTreeMap::new();
    for t in f.terms() {
        let depth = t
            .denominators
            .iter()
            .filter(|a| map.apply(a).is_zero())
            .count();
        if depth == 0 {
            constant_atoms.push(Term::new(
                t.coefficient.clone(),
                map.apply(&t.numerator),
                t.denominators.iter().map(|a| map.apply(a)).collect(),
            ));
            continue;
        }
        let series = term_series(t, map, &v, depth);
        for (power, atoms) in series {
            for atom in atoms {
                if power == 0 {
                    constant_atoms.push(atom);
                } else {
                    negative_atoms.entry(power).or_default().push(atom);
                }
            }
        }
    }

    // Poles in tau must cancel; otherwise the image point sits inside
    // the pole set of the function.
    for (power, atoms) in negative_atoms {
        let residue = GenFun::from_terms(n, atoms);
        if residue.is_zero() {
            continue;
        }
        if !exact_zero(&residue, 200_000)? {
            return Err(Error::Divergent(format!(
                "substitution has an uncancelled pole at tau^{power}"
            )));
        }
    }
    Ok(GenFun::from_terms(n, constant_atoms))
}

/// Specialize every variable to 1 and return the (finite) number of
/// points, with multiplicity if the function is not a set indicator.
pub fn count(f: &GenFun) -> Result<Rational> {
    let g = substitute(f, &MonomialMap::collapse_all(f.dim()))?;
    match g.terms() {
        [] => Ok(Rational::zero()),
        [t] => Ok(t.coefficient.clone()),
        _ => unreachable!("dimension-zero functions merge to one term"),
    }
}

/// Laurent expansion of one term under the perturbed substitution,
/// truncated at `tau^0`; keys are tau powers in `-depth..=0`, values
/// the rational-function atoms making up that coefficient.
fn term_series(
    t: &Term,
    map: &MonomialMap,
    v: &IntVector,
    depth: usize,
) -> BTreeMap<i64, Vec<Term>> {
    let n = map.target_dim();
    let h = inv_todd_coeffs(depth + 1);
    let exps = exp_coeffs(depth);

    // Seed: alpha * z^{Lp} * e^{tau <v,p>}.
    let vp = v.dot(&t.numerator);
    let mut seed_levels: Vec<Vec<Term>> = Vec::with_capacity(depth + 1);
    let mut vp_pow = Rational::one();
    for s in 0..=depth {
        if s > 0 {
            vp_pow *= rat_int(&vp);
        }
        let c = &t.coefficient * &exps[s] * &vp_pow;
        seed_levels.push(vec![Term::new(c, map.apply(&t.numerator), Vec::new())]);
    }
    let mut acc = TauSeries { start: 0, levels: seed_levels };

    for a in &t.denominators {
        let image = map.apply(a);
        let xi = v.dot(a);
        let factor = if image.is_zero() {
            dead_factor_series(n, &xi, &h, depth)
        } else {
            live_factor_series(&image, &xi, depth)
        };
        acc = acc.mul(&factor, depth);
    }

    let mut out = BTreeMap::new();
    for (i, atoms) in acc.levels.into_iter().enumerate() {
        let power = acc.start + i as i64;
        if power > 0 {
            break;
        }
        let atoms: Vec<Term> = atoms.into_iter().filter(|a| !a.coefficient.is_zero()).collect();
        if !atoms.is_empty() {
            out.insert(power, atoms);
        }
    }
    out
}

/// A truncated Laurent series in tau whose coefficients are lists of
/// rational-function atoms; `levels[i]` holds the coefficient of
/// `tau^{start + i}`.
struct TauSeries {
    start: i64,
    levels: Vec<Vec<Term>>,
}

impl TauSeries {
    /// Product, truncated so that at most `budget` powers above the
    /// combined start survive (enough to reach `tau^0`).
    fn mul(&self, other: &TauSeries, budget: usize) -> TauSeries {
        let start = self.start + other.start;
        let mut levels: Vec<Vec<Term>> = (0..=budget).map(|_| Vec::new()).collect();
        for (i, ai) in self.levels.iter().enumerate() {
            for (j, bj) in other.levels.iter().enumerate() {
                if i + j > budget {
                    break;
                }
                for x in ai {
                    for y in bj {
                        let mut dens = x.denominators.clone();
                        dens.extend(y.denominators.iter().cloned());
                        levels[i + j].push(Term::new(
                            &x.coefficient * &y.coefficient,
                            &x.numerator + &y.numerator,
                            dens,
                        ));
                    }
                }
            }
        }
        TauSeries { start, levels }
    }
}

/// Series of `1/(1 - e^{tau xi})` for `xi != 0`: the coefficient of
/// `tau^{m-1}` is `-h_m (-xi)^m / (tau xi)`-style, i.e.
/// `-h_m (-1)^m xi^{m-1}`, starting at `tau^{-1}`.
fn dead_factor_series(n: usize, xi: &Int, h: &[Rational], depth: usize) -> TauSeries {
    assert!(!xi.is_zero());
    let mut levels = Vec::with_capacity(depth + 1);
    // tau power m-1 for m = 0..=depth; xi^{m-1} starts at 1/xi.
    let mut xi_pow = Rational::new(Int::one(), xi.clone());
    for m in 0..=depth {
        if m > 0 {
            xi_pow *= rat_int(xi);
        }
        let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = -(&h[m] * &sign) * &xi_pow;
        levels.push(vec![Term::new(c, IntVector::zeros(n), Vec::new())]);
    }
    TauSeries { start: -1, levels }
}

/// Series of `1/(1 - z^B e^{tau xi})` for `B != 0`:
/// `sum_j z^{jB}/(1-z^B)^{j+1} (e^{tau xi} - 1)^j`, truncated at
/// `tau^depth`.
fn live_factor_series(image: &IntVector, xi: &Int, depth: usize) -> TauSeries {
    let mut levels: Vec<Vec<Term>> = (0..=depth).map(|_| Vec::new()).collect();
    // (e^{tau xi} - 1) as a scalar series: xi^s/s! for s >= 1.
    let exps = exp_coeffs(depth);
    let mut base = vec![Rational::zero(); depth + 1];
    let mut xi_pow = Rational::one();
    for s in 1..=depth {
        xi_pow *= rat_int(xi);
        base[s] = &exps[s] * &xi_pow;
    }
    // Powers (e^{tau xi} - 1)^j, j = 0..=depth.
    let mut power = vec![Rational::zero(); depth + 1];
    power[0] = Rational::one();
    for j in 0..=depth {
        if j > 0 {
            let mut next = vec![Rational::zero(); depth + 1];
            for s in 0..=depth {
                if power[s].is_zero() {
                    continue;
                }
                for (u, b) in base.iter().enumerate().take(depth + 1 - s) {
                    if !b.is_zero() {
                        next[s + u] += &power[s] * b;
                    }
                }
            }
            power = next;
        }
        // Atom z^{jB}/(1-z^B)^{j+1} weighted by the series of the power.
        let shift = image.scale(&Int::from(j as i64));
        let dens = vec![image.clone(); j + 1];
        for (s, c) in power.iter().enumerate() {
            if !c.is_zero() {
                levels[s].push(Term::new(c.clone(), shift.clone(), dens.clone()));
            }
        }
    }
    TauSeries { start: 0, levels }
}

/// Exact zero test by clearing denominators: orient every factor to a
/// sign-normal exponent, multiply each term by the factors it is
/// missing from the common denominator, and compare the expanded
/// numerator polynomials.  `cap` bounds the number of monomials kept.
fn exact_zero(f: &GenFun, cap: usize) -> Result<bool> {
    // Canonical orientation: first nonzero entry of each exponent > 0.
    let mut canon: Vec<Term> = Vec::with_capacity(f.terms().len());
    for t in f.terms() {
        let mut coef = t.coefficient.clone();
        let mut p = t.numerator.clone();
        let mut dens = Vec::with_capacity(t.denominators.len());
        for a in &t.denominators {
            if sign_normal(a) {
                dens.push(a.clone());
            } else {
                coef = -coef;
                p = &p - a;
                dens.push(-a);
            }
        }
        canon.push(Term::new(coef, p, dens));
    }
    // Common denominator: max multiplicity of each distinct exponent.
    let mut max_mult: BTreeMap<IntVector, usize> = BTreeMap::new();
    for t in &canon {
        let mut mine: BTreeMap<&IntVector, usize> = BTreeMap::new();
        for a in &t.denominators {
            *mine.entry(a).or_insert(0) += 1;
        }
        for (a, m) in mine {
            let slot = max_mult.entry(a.clone()).or_insert(0);
            *slot = (*slot).max(m);
        }
    }
    let mut total: BTreeMap<IntVector, Rational> = BTreeMap::new();
    for t in &canon {
        let mut mine: BTreeMap<&IntVector, usize> = BTreeMap::new();
        for a in &t.denominators {
            *mine.entry(a).or_insert(0) += 1;
        }
        let mut poly: BTreeMap<IntVector, Rational> = BTreeMap::new();
        poly.insert(t.numerator.clone(), t.coefficient.clone());
        for (a, want) in &max_mult {
            let have = mine.get(a).copied().unwrap_or(0);
            for _ in have..*want {
                // Multiply by (1 - z^a).
                let mut next = poly.clone();
                for (q, c) in &poly {
                    let slot = next.entry(q + a).or_insert_with(Rational::zero);
                    *slot -= c;
                }
                next.retain(|_, c| !c.is_zero());
                poly = next;
                if poly.len() > cap {
                    return Err(Error::SearchExhausted(
                        "cleared-denominator expansion too large".into(),
                    ));
                }
            }
        }
        for (q, c) in poly {
            let slot = total.entry(q).or_insert_with(Rational::zero);
            *slot += c;
            if total.len() > cap {
                return Err(Error::SearchExhausted(
                    "cleared-denominator expansion too large".into(),
                ));
            }
        }
    }
    Ok(total.values().all(|c| c.is_zero()))
}

fn sign_normal(a: &IntVector) -> bool {
    for e in a.iter() {
        if e.is_positive() {
            return true;
        }
        if e.is_negative() {
            return false;
        }
    }
    false
}
