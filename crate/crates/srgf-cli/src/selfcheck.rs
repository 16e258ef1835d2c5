//! Cross-validation of the pipeline against the brute-force oracle.
//!
//! Every family rebuilds a batch of small random instances from a fixed
//! seed, runs them through the generating-function pipeline, and
//! compares exact expansions (or exact scalars) with an independent
//! enumeration.  One line per family; any mismatch fails the whole
//! check and the process exits nonzero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srgf::applications::{
    count_gaps, frobenius_number, hilbert_basis_genfun, HilbertBasisProblem, SemigroupProblem,
};
use srgf::barvinok::polytope_genfun;
use srgf::exactmath::{int, rat, Int, IntMatrix, IntVector};
use srgf::genfun::{count, difference, interior_genfun, intersect, union, GenFun};
use srgf::oracle::{
    brute_hilbert_basis, count_gaps_dp, enumerate_lattice_points, frobenius_dp,
    relative_interior_points, PointSet,
};
use srgf::polyhedra::Polyhedron;
use srgf::projection::{project_genfun, LatticeProjection};

pub fn run() -> Result<(), String> {
    let mut failures = 0usize;
    let families: Vec<(&str, fn() -> Result<usize, String>)> = vec![
        ("polytope counts vs enumeration", check_counts),
        ("boolean algebra vs point sets", check_boolean),
        ("interior points vs enumeration", check_interior),
        ("projection images vs enumeration", check_projection),
        ("frobenius and gap counts vs dynamic programming", check_frobenius),
        ("hilbert bases vs brute force", check_hilbert),
    ];
    let total = families.len();
    for (name, family) in families {
        match family() {
            Ok(cases) => println!("ok {name} ({cases} cases)"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failures == 0 {
        println!("selfcheck passed");
        Ok(())
    } else {
        Err(format!("selfcheck failed {failures} of {total} families"))
    }
}

fn fail<T: std::fmt::Display>(context: &str, e: T) -> String {
    format!("{context}: {e}")
}

/// A small random polytope: per-axis bounds plus an optional cut.
fn random_polytope(rng: &mut ChaCha8Rng, d: usize) -> Polyhedron {
    let mut rows = Vec::new();
    for j in 0..d {
        rows.push((IntVector::unit(d, j), int(rng.gen_range(1..=4))));
        let mut neg = IntVector::zeros(d);
        neg.set_entry(j, int(-1));
        rows.push((neg, int(rng.gen_range(0..=2))));
    }
    let cut = IntVector::new((0..d).map(|_| int(rng.gen_range(-2..=2))).collect());
    if !cut.is_zero() {
        rows.push((cut, int(rng.gen_range(1..=6))));
    }
    Polyhedron::from_rows(d, rows)
}

/// Exact expansion of `f` over the box equals the point set.
fn matches_set(
    f: &GenFun,
    set: &PointSet,
    lo: &IntVector,
    hi: &IntVector,
) -> Result<bool, String> {
    let got = f.expand(lo, hi).map_err(|e| fail("expansion", e))?;
    let want = set.indicator_in_box(lo, hi);
    if got.len() != want.len() {
        return Ok(false);
    }
    Ok(got
        .iter()
        .all(|(p, c)| *c == rat(1, 1) && want.contains_key(p)))
}

/// Bounding box of a point set, padded by one, or `None` when empty.
fn bounding_box(set: &PointSet, dim: usize) -> Option<(IntVector, IntVector)> {
    let mut iter = set.iter();
    let first = iter.next()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in iter {
        for j in 0..dim {
            if p.entry(j) < lo.entry(j) {
                lo.set_entry(j, p.entry(j).clone());
            }
            if p.entry(j) > hi.entry(j) {
                hi.set_entry(j, p.entry(j).clone());
            }
        }
    }
    let one = IntVector::new(vec![Int::from(1); dim]);
    Some((&lo - &one, &hi + &one))
}

fn check_counts() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut cases = 0;
    for round in 0..16 {
        let d = if round < 10 { 2 } else { 3 };
        let p = random_polytope(&mut rng, d);
        let f = polytope_genfun(&p).map_err(|e| fail("construction", e))?;
        let n = count(&f).map_err(|e| fail("count", e))?;
        let expect = enumerate_lattice_points(p.matrix(), p.rhs())
            .map_err(|e| fail("enumeration", e))?;
        if n != rat(expect.len() as i64, 1) {
            return Err(format!(
                "count {n} disagrees with enumeration {} on a dim-{d} instance",
                expect.len()
            ));
        }
        cases += 1;
    }
    Ok(cases)
}

fn check_boolean() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut cases = 0;
    for round in 0..12 {
        let d = if round < 6 { 1 } else { 2 };
        let cube = |rng: &mut ChaCha8Rng| {
            let lo = IntVector::new((0..d).map(|_| int(rng.gen_range(-4..=1))).collect());
            let span = IntVector::new((0..d).map(|_| int(rng.gen_range(0..=4))).collect());
            Polyhedron::cube(&lo, &(&lo + &span))
        };
        let (pa, pb) = (cube(&mut rng), cube(&mut rng));
        let fa = polytope_genfun(&pa).map_err(|e| fail("construction", e))?;
        let fb = polytope_genfun(&pb).map_err(|e| fail("construction", e))?;
        let sa = enumerate_lattice_points(pa.matrix(), pa.rhs())
            .map_err(|e| fail("enumeration", e))?;
        let sb = enumerate_lattice_points(pb.matrix(), pb.rhs())
            .map_err(|e| fail("enumeration", e))?;
        let lo = IntVector::new(vec![Int::from(-6); d]);
        let hi = IntVector::new(vec![Int::from(7); d]);
        let pairs: Vec<(&str, GenFun, PointSet)> = vec![
            ("union", union(&fa, &fb).map_err(|e| fail("union", e))?, sa.union(&sb)),
            (
                "intersect",
                intersect(&fa, &fb).map_err(|e| fail("intersect", e))?,
                sa.intersect(&sb),
            ),
            (
                "difference",
                difference(&fa, &fb).map_err(|e| fail("difference", e))?,
                sa.difference(&sb),
            ),
        ];
        for (op, f, s) in &pairs {
            if !matches_set(f, s, &lo, &hi)? {
                return Err(format!("{op} expansion disagrees on a dim-{d} instance"));
            }
        }
        cases += 1;
    }
    Ok(cases)
}

fn check_interior() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut cases = 0;
    for round in 0..8 {
        let d = if round < 4 { 1 } else { 2 };
        let p = random_polytope(&mut rng, d);
        if p.is_empty() {
            continue;
        }
        let f = interior_genfun(&p).map_err(|e| fail("interior", e))?;
        let expect = relative_interior_points(p.matrix(), p.rhs())
            .map_err(|e| fail("enumeration", e))?;
        let lo = IntVector::new(vec![Int::from(-4); d]);
        let hi = IntVector::new(vec![Int::from(6); d]);
        if !matches_set(&f, &expect, &lo, &hi)? {
            return Err(format!("interior expansion disagrees on a dim-{d} instance"));
        }
        cases += 1;
    }
    Ok(cases)
}

fn check_projection() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut cases = 0;
    for round in 0..6 {
        let d = if round < 4 { 2 } else { 3 };
        let k = if d == 2 { 1 } else { rng.gen_range(1..=2) };
        let p = random_polytope(&mut rng, d);
        let t_mat = IntMatrix::from_rows(
            (0..k)
                .map(|_| IntVector::new((0..d).map(|_| int(rng.gen_range(-2..=2))).collect()))
                .collect(),
        );
        let t = LatticeProjection::new(t_mat);
        let f = project_genfun(&p, &t).map_err(|e| fail("projection", e))?;
        let points = enumerate_lattice_points(p.matrix(), p.rhs())
            .map_err(|e| fail("enumeration", e))?;
        let image = points.image(t.matrix());
        match bounding_box(&image, k) {
            None => {
                if !f.is_zero() {
                    return Err("projection of an empty set is not zero".into());
                }
            }
            Some((lo, hi)) => {
                if !matches_set(&f, &image, &lo, &hi)? {
                    return Err(format!(
                        "projected expansion disagrees on a dim-{d} to dim-{k} instance"
                    ));
                }
            }
        }
        cases += 1;
    }
    Ok(cases)
}

fn check_frobenius() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut batches: Vec<Vec<u64>> = vec![vec![3, 5], vec![2, 3], vec![6, 10, 15]];
    while batches.len() < 9 {
        let a = rng.gen_range(2..=30u64);
        let b = rng.gen_range(2..=30u64);
        if SemigroupProblem::new(vec![a, b]).is_ok() {
            batches.push(vec![a, b]);
        }
    }
    let mut cases = 0;
    for gens in &batches {
        let problem = SemigroupProblem::new(gens.clone()).map_err(|e| fail("generators", e))?;
        let got = frobenius_number(&problem).map_err(|e| fail("frobenius", e))?;
        let want = match frobenius_dp(gens) {
            Some(n) => Int::from(n),
            None => Int::from(-1),
        };
        if got != want {
            return Err(format!("frobenius {got} != {want} for generators {gens:?}"));
        }
        let got_gaps = count_gaps(&problem).map_err(|e| fail("gaps", e))?;
        let want_gaps = Int::from(count_gaps_dp(gens));
        if got_gaps != want_gaps {
            return Err(format!(
                "gap count {got_gaps} != {want_gaps} for generators {gens:?}"
            ));
        }
        cases += 1;
    }
    Ok(cases)
}

fn check_hilbert() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut cones: Vec<Vec<IntVector>> = vec![
        vec![IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[0, 1])],
        vec![IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[1, 3])],
        vec![IntVector::from_i64(&[2, 1]), IntVector::from_i64(&[1, 3])],
        vec![
            IntVector::from_i64(&[1, 0, 0]),
            IntVector::from_i64(&[0, 1, 0]),
            IntVector::from_i64(&[1, 1, 2]),
        ],
    ];
    while cones.len() < 7 {
        let gens = vec![
            IntVector::from_i64(&[rng.gen_range(1..=4), rng.gen_range(0..=4)]),
            IntVector::from_i64(&[rng.gen_range(0..=4), rng.gen_range(1..=4)]),
        ];
        if HilbertBasisProblem::new(gens.clone()).is_ok() {
            cones.push(gens);
        }
    }
    let mut cases = 0;
    for gens in &cones {
        let problem =
            HilbertBasisProblem::new(gens.clone()).map_err(|e| fail("generators", e))?;
        let f = hilbert_basis_genfun(&problem).map_err(|e| fail("basis", e))?;
        let mut expect = brute_hilbert_basis(problem.generators())
            .map_err(|e| fail("brute force", e))?;
        expect.sort();
        let d = gens.len();
        let total = count(&f).map_err(|e| fail("count", e))?;
        if total != rat(expect.len() as i64, 1) {
            return Err(format!(
                "basis size {total} != {} for generators {gens:?}",
                expect.len()
            ));
        }
        let set = PointSet::from_points(d, expect.iter().cloned());
        let boxed = bounding_box(&set, d)
            .unwrap_or_else(|| (IntVector::zeros(d), IntVector::zeros(d)));
        if !matches_set(&f, &set, &boxed.0, &boxed.1)? {
            return Err(format!("hilbert basis disagrees for generators {gens:?}"));
        }
        cases += 1;
    }
    Ok(cases)
}
