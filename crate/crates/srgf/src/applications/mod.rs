//! Consumers of the pipeline: numerical semigroups and Hilbert bases.
//!
//! A coprime list of positive generators spans a numerical semigroup,
//! the set of all their nonnegative integer combinations.  Membership
//! is automatic from some cutoff on, so the generating function splits
//! into a head — the projection of a simplex of combination vectors
//! under the weight map — plus a geometric ray that covers the rest.
//! The largest gap, the gap count, and windowed gap counts all reduce
//! to specializations of that one series.
//!
//! The Hilbert basis of a simplicial cone arrives through the same
//! machinery in reverse: every indecomposable lattice point lives in
//! the fundamental parallelepiped of the generators, the decomposable
//! ones are sums of two nonzero parallelepiped points — one projection
//! of a product polytope — and the basis is the boolean difference.

use crate::barvinok::polytope_genfun;
use crate::exactmath::{int, Int, IntMatrix, IntVector, Rational};
use crate::genfun::{count, difference, intersect, GenFun, Term};
use crate::polyhedra::Polyhedron;
use crate::projection::{project_genfun, LatticeProjection};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

/// A numerical semigroup given by generators: positive integers whose
/// greatest common divisor is one, at least two of them.
#[derive(Clone, Debug)]
pub struct SemigroupProblem {
    generators: Vec<u64>,
}

impl SemigroupProblem {
    pub fn new(generators: Vec<u64>) -> Result<Self> {
        if generators.len() < 2 {
            return Err(Error::BadInput(
                "a semigroup problem needs at least two generators".into(),
            ));
        }
        if generators.iter().any(|&g| g == 0) {
            return Err(Error::BadInput("generators must be positive".into()));
        }
        let gcd = generators
            .iter()
            .fold(0u64, |acc, &g| num_integer::gcd(acc, g));
        if gcd != 1 {
            return Err(Error::BadInput(format!(
                "generators share the common factor {gcd}; the semigroup \
                 would miss every other residue"
            )));
        }
        Ok(SemigroupProblem { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }
}

/// Cutoff from which membership is automatic: with `t` the largest of
/// `d` generators, every integer from `ceil(2 t^2 / d)` on is a
/// combination, since the largest gap sits strictly below that bound.
fn tail_cutoff(generators: &[u64]) -> Int {
    let t = Int::from(*generators.iter().max().expect("nonempty"));
    let d = int(generators.len() as i64);
    let num = int(2) * &t * &t;
    (num + &d - Int::one()) / d
}

/// Generating function `sum x^m` over the members of the semigroup.
///
/// The head — members below the cutoff — is the projection of the
/// simplex of combination vectors `{xi >= 0, sum a_i xi_i < cutoff}`
/// under the weight map `xi -> sum a_i xi_i`; the tail is the ray
/// `x^cutoff / (1 - x)`.
pub fn semigroup_genfun(problem: &SemigroupProblem) -> Result<GenFun> {
    let gens = problem.generators();
    let d = gens.len();
    let cutoff = tail_cutoff(gens);
    let weights = IntVector::new(gens.iter().map(|&g| Int::from(g)).collect());
    let mut rows: Vec<(IntVector, Int)> = (0..d)
        .map(|i| (-&IntVector::unit(d, i), Int::zero()))
        .collect();
    rows.push((weights.clone(), &cutoff - Int::one()));
    let simplex = Polyhedron::from_rows(d, rows);
    let map = LatticeProjection::new(IntMatrix::from_rows(vec![weights]));
    let head = project_genfun(&simplex, &map)?;
    let ray = GenFun::from_terms(
        1,
        vec![Term::new(
            Rational::one(),
            IntVector::new(vec![cutoff]),
            vec![IntVector::from_i64(&[1])],
        )],
    );
    Ok(head.add(&ray))
}

/// Closed form for two coprime generators, used to cross-check the
/// projection route: `(1 - x^{a b}) / ((1 - x^a)(1 - x^b))`.
pub fn two_generator_closed_form(a: u64, b: u64) -> GenFun {
    let dens = vec![
        IntVector::new(vec![Int::from(a)]),
        IntVector::new(vec![Int::from(b)]),
    ];
    GenFun::from_terms(
        1,
        vec![
            Term::new(Rational::one(), IntVector::zeros(1), dens.clone()),
            Term::new(
                -Rational::one(),
                IntVector::new(vec![Int::from(a) * Int::from(b)]),
                dens,
            ),
        ],
    )
}

/// The shape every three-generator semigroup series takes once the
/// denominators are cleared: a numerator `1 - x^{m_1} - x^{m_2} -
/// x^{m_3} + x^{p_1} + x^{p_2}` over `prod (1 - x^{a_i})`.  The
/// exponents are instance data supplied by the caller, so this is a
/// cross-check target rather than a computation.
pub fn three_generator_closed_form(gens: &[u64; 3], minus: &[u64; 3], plus: &[u64; 2]) -> GenFun {
    let dens: Vec<IntVector> = gens
        .iter()
        .map(|&a| IntVector::new(vec![Int::from(a)]))
        .collect();
    let mut terms = vec![Term::new(Rational::one(), IntVector::zeros(1), dens.clone())];
    for &m in minus {
        terms.push(Term::new(
            -Rational::one(),
            IntVector::new(vec![Int::from(m)]),
            dens.clone(),
        ));
    }
    for &p in plus {
        terms.push(Term::new(
            Rational::one(),
            IntVector::new(vec![Int::from(p)]),
            dens.clone(),
        ));
    }
    GenFun::from_terms(1, terms)
}

/// Largest integer that is not a member, or `-1` when there is none
/// (some generator is one, so the semigroup is all of the axis).
///
/// Prefix gap counts are monotone in the right endpoint, so the
/// largest gap is found by binary search on `|gaps ∩ [0, b]|`.
pub fn frobenius_number(problem: &SemigroupProblem) -> Result<Int> {
    if problem.generators().contains(&1) {
        return Ok(int(-1));
    }
    let members = semigroup_genfun(problem)?;
    let gaps = complement(&members);
    let total = count(&gaps)?;
    if total.is_zero() {
        return Ok(int(-1));
    }
    let mut lo = Int::zero();
    let mut hi = tail_cutoff(problem.generators()) - Int::one();
    while lo < hi {
        let mid = (&lo + &hi) / int(2);
        let seen = count(&intersect(&gaps, &interval_genfun(&Int::zero(), &mid))?)?;
        if seen == total {
            hi = mid;
        } else {
            lo = mid + Int::one();
        }
    }
    Ok(lo)
}

/// How many nonnegative integers are not members.
pub fn count_gaps(problem: &SemigroupProblem) -> Result<Int> {
    let members = semigroup_genfun(problem)?;
    exact_count(&complement(&members))
}

/// A window of the number line: an interval, an arithmetic
/// progression, or a progression clipped to an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    interval: Option<(u64, u64)>,
    progression: Option<(u64, u64)>,
}

impl Window {
    /// The integers from `lo` to `hi` inclusive.
    pub fn interval(lo: u64, hi: u64) -> Window {
        Window { interval: Some((lo, hi)), progression: None }
    }

    /// The progression `residue, residue + modulus, ...`.
    pub fn progression(residue: u64, modulus: u64) -> Window {
        Window { interval: None, progression: Some((residue, modulus)) }
    }

    /// The progression clipped to `[lo, hi]`.
    pub fn progression_within(residue: u64, modulus: u64, lo: u64, hi: u64) -> Window {
        Window {
            interval: Some((lo, hi)),
            progression: Some((residue, modulus)),
        }
    }
}

/// Which side of the membership split a window count reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowCount {
    Gaps,
    Members,
}

/// Count the gaps (or members) of the semigroup that fall inside the
/// window.  Counting members needs a bounded window — otherwise the
/// count is infinite — while gaps are finite no matter what.
pub fn gaps_in_window(
    problem: &SemigroupProblem,
    window: &Window,
    kind: WindowCount,
) -> Result<Int> {
    if let Some((_, modulus)) = window.progression {
        if modulus == 0 {
            return Err(Error::BadInput("progression modulus must be positive".into()));
        }
    }
    if kind == WindowCount::Members && window.interval.is_none() {
        return Err(Error::BadInput(
            "counting members needs a bounded window".into(),
        ));
    }
    if let Some((lo, hi)) = window.interval {
        if lo > hi {
            return Ok(Int::zero());
        }
    }
    let members = semigroup_genfun(problem)?;
    let base = match kind {
        WindowCount::Members => members,
        WindowCount::Gaps => complement(&members),
    };
    let mut frame: Option<GenFun> = None;
    if let Some((lo, hi)) = window.interval {
        frame = Some(interval_genfun(&Int::from(lo), &Int::from(hi)));
    }
    if let Some((residue, modulus)) = window.progression {
        let steps = GenFun::from_terms(
            1,
            vec![Term::new(
                Rational::one(),
                IntVector::new(vec![Int::from(residue)]),
                vec![IntVector::new(vec![Int::from(modulus)])],
            )],
        );
        frame = Some(match frame {
            Some(f) => intersect(&f, &steps)?,
            None => steps,
        });
    }
    let frame = frame.ok_or_else(|| {
        Error::BadInput("window needs an interval or a progression".into())
    })?;
    exact_count(&intersect(&base, &frame)?)
}

/// A simplicial cone in `Z^d`: exactly `d` linearly independent
/// generators.
#[derive(Clone, Debug)]
pub struct HilbertBasisProblem {
    generators: IntMatrix,
}

impl HilbertBasisProblem {
    /// `generators` become the columns of the cone matrix.
    pub fn new(generators: Vec<IntVector>) -> Result<Self> {
        let d = generators.len();
        if d == 0 {
            return Err(Error::BadInput("a cone needs at least one generator".into()));
        }
        if generators.iter().any(|u| u.dim() != d) {
            return Err(Error::DimensionMismatch(
                "a simplicial cone in Z^d needs exactly d generators of dimension d".into(),
            ));
        }
        let matrix = IntMatrix::from_cols(generators);
        if matrix.det().is_zero() {
            return Err(Error::DependentInput("cone generators".into()));
        }
        Ok(HilbertBasisProblem { generators: matrix })
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }
}

/// Generating function of the Hilbert basis of the cone: the unique
/// minimal generating set of its lattice-point monoid.
///
/// Candidates are the nonzero lattice points of the fundamental
/// parallelepiped (any basis element is one: subtracting a generator
/// from a point outside keeps it in the cone).  A candidate is
/// redundant exactly when it is the sum of two nonzero parallelepiped
/// points, and those sums are one projection of a product polytope
/// away.
pub fn hilbert_basis_genfun(problem: &HilbertBasisProblem) -> Result<GenFun> {
    let u = problem.generators();
    let d = u.rows();
    let det = u.det();
    let adj = u.adjugate().expect("square matrix");
    let sign = if det.is_negative() { int(-1) } else { int(1) };
    // Row i of the signed adjugate pairs to |det| with generator i and
    // to zero with every other, so these are inner normals of the
    // parallelepiped's facets.
    let normals: Vec<IntVector> = (0..d).map(|i| adj.row(i).scale(&sign)).collect();
    let volume = det.abs();

    // The parallelepiped minus the origin: 0 <= <l_i, x> <= |det| for
    // all i, and the facet sums at least one — every nonzero lattice
    // point of the parallelepiped clears that line, the origin does not.
    let mut rows: Vec<(IntVector, Int)> = Vec::new();
    for l in &normals {
        rows.push((-l, Int::zero()));
        rows.push((l.clone(), volume.clone()));
    }
    let total: IntVector = normals
        .iter()
        .fold(IntVector::zeros(d), |acc, l| &acc + l);
    rows.push((-&total, int(-1)));
    let candidates_body = Polyhedron::from_rows(d, rows.clone());
    let candidates = polytope_genfun(&candidates_body)?;

    // Sums of two candidates: the product polytope under (x, y) -> x + y.
    let mut product_rows: Vec<(IntVector, Int)> = Vec::new();
    for (a, b) in candidates_body.row_pairs() {
        product_rows.push((a.concat(&IntVector::zeros(d)), b.clone()));
        product_rows.push((IntVector::zeros(d).concat(&a), b));
    }
    let product = Polyhedron::from_rows(2 * d, product_rows);
    let add_map = IntMatrix::from_rows(
        (0..d)
            .map(|i| IntVector::unit(d, i).concat(&IntVector::unit(d, i)))
            .collect(),
    );
    let sums = project_genfun(&product, &LatticeProjection::new(add_map))?;

    difference(&candidates, &sums)
}

/// Indicator of the nonnegative axis, `1 / (1 - x)`.
fn nonnegative_axis() -> GenFun {
    GenFun::from_terms(
        1,
        vec![Term::new(
            Rational::one(),
            IntVector::zeros(1),
            vec![IntVector::from_i64(&[1])],
        )],
    )
}

/// Gaps of a membership series: the axis minus the members.
fn complement(members: &GenFun) -> GenFun {
    nonnegative_axis().sub(members)
}

/// Indicator of the interval `[a, b]`, as `(x^a - x^{b+1}) / (1 - x)`.
/// Requires `a <= b`.
fn interval_genfun(a: &Int, b: &Int) -> GenFun {
    debug_assert!(a <= b);
    let den = vec![IntVector::from_i64(&[1])];
    GenFun::from_terms(
        1,
        vec![
            Term::new(Rational::one(), IntVector::new(vec![a.clone()]), den.clone()),
            Term::new(
                -Rational::one(),
                IntVector::new(vec![b + Int::one()]),
                den,
            ),
        ],
    )
}

/// Point count of an indicator series, as an integer.
fn exact_count(f: &GenFun) -> Result<Int> {
    let c = count(f)?;
    debug_assert!(c.is_integer(), "indicator counts are integral");
    Ok(c.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{univariate_equal, univariate_series};
    use crate::oracle::{brute_hilbert_basis, count_gaps_dp, frobenius_dp, semigroup_membership};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn sg(gens: &[u64]) -> SemigroupProblem {
        SemigroupProblem::new(gens.to_vec()).unwrap()
    }

    /// The 0/1 support of an indicator series inside a box, checked to
    /// be the whole support via the total count.
    fn support_in_box(f: &GenFun, lo: &[i64], hi: &[i64]) -> BTreeSet<IntVector> {
        let expansion = f.expand(&iv(lo), &iv(hi)).unwrap();
        let mut points = BTreeSet::new();
        for (point, coeff) in expansion {
            if coeff.is_zero() {
                continue;
            }
            assert!(coeff.is_one(), "indicator coefficient at {point:?} is {coeff}");
            points.insert(point);
        }
        let total = count(f).unwrap();
        assert_eq!(total, Rational::from(int(points.len() as i64)));
        points
    }

    #[test]
    fn test_two_generators_match_closed_form() {
        for (a, b) in [(3u64, 5u64), (4, 7)] {
            let f = semigroup_genfun(&sg(&[a, b])).unwrap();
            assert!(univariate_equal(&f, &two_generator_closed_form(a, b)).unwrap());
        }
    }

    #[test]
    fn test_expansion_matches_membership_table() {
        for gens in [vec![2u64, 3], vec![6, 10, 15]] {
            let f = semigroup_genfun(&sg(&gens)).unwrap();
            let upto = 40usize;
            let series = univariate_series(&f, 0, upto as i64).unwrap();
            let table = semigroup_membership(&gens, upto);
            for v in 0..=upto {
                let expect = if table[v] { Rational::one() } else { Rational::zero() };
                assert_eq!(series[v], expect, "generators {gens:?}, value {v}");
            }
        }
    }

    #[test]
    fn test_three_generator_reference_instance() {
        let f = semigroup_genfun(&sg(&[23, 29, 44])).unwrap();
        let reference =
            three_generator_closed_form(&[23, 29, 44], &[161, 203, 220], &[249, 335]);
        assert!(univariate_equal(&f, &reference).unwrap());
    }

    #[test]
    fn test_frobenius_matches_dp() {
        for (gens, expect) in [
            (vec![3u64, 5], 7i64),
            (vec![2, 3], 1),
            (vec![6, 10, 15], 29),
        ] {
            assert_eq!(frobenius_number(&sg(&gens)).unwrap(), int(expect));
            assert_eq!(frobenius_dp(&gens), Some(expect as u64));
        }
    }

    #[test]
    fn test_frobenius_with_unit_generator() {
        assert_eq!(frobenius_number(&sg(&[1, 7])).unwrap(), int(-1));
        assert_eq!(frobenius_dp(&[1, 7]), None);
    }

    #[test]
    fn test_count_gaps_examples() {
        assert_eq!(count_gaps(&sg(&[3, 5])).unwrap(), int(4));
        assert_eq!(count_gaps(&sg(&[2, 3])).unwrap(), int(1));
        assert_eq!(count_gaps_dp(&[3, 5]), 4);
        assert_eq!(count_gaps_dp(&[2, 3]), 1);
    }

    #[test]
    fn test_genus_formula_on_random_pairs() {
        // For two coprime generators the gap count is exactly
        // (a - 1)(b - 1) / 2.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut seen = 0;
        while seen < 8 {
            let a = rng.gen_range(2u64..=60);
            let b = rng.gen_range(2u64..=60);
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            seen += 1;
            let gaps = count_gaps(&sg(&[a, b])).unwrap();
            assert_eq!(gaps, int(((a - 1) * (b - 1) / 2) as i64), "pair ({a}, {b})");
            assert_eq!(gaps, Int::from(count_gaps_dp(&[a, b])));
        }
    }

    #[test]
    fn test_window_interval_counts() {
        let s = sg(&[3, 5]);
        // Gaps of <3, 5> are 1, 2, 4, 7; members of [1, 7] are 3, 5, 6.
        let w = Window::interval(1, 7);
        assert_eq!(gaps_in_window(&s, &w, WindowCount::Gaps).unwrap(), int(4));
        assert_eq!(gaps_in_window(&s, &w, WindowCount::Members).unwrap(), int(3));
    }

    #[test]
    fn test_window_progression_counts() {
        let s = sg(&[3, 5]);
        // Gaps congruent to 1 mod 3: 1, 4, 7.
        let clipped = Window::progression_within(1, 3, 0, 7);
        assert_eq!(
            gaps_in_window(&s, &clipped, WindowCount::Gaps).unwrap(),
            int(3)
        );
        // All gaps lie below the cutoff, so the unclipped progression
        // counts the same set.
        let open = Window::progression(1, 3);
        assert_eq!(gaps_in_window(&s, &open, WindowCount::Gaps).unwrap(), int(3));
        assert!(matches!(
            gaps_in_window(&s, &open, WindowCount::Members),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn test_window_degenerate_cases() {
        let s = sg(&[3, 5]);
        let empty = Window::interval(5, 2);
        assert_eq!(gaps_in_window(&s, &empty, WindowCount::Gaps).unwrap(), int(0));
        assert_eq!(
            gaps_in_window(&s, &empty, WindowCount::Members).unwrap(),
            int(0)
        );
        assert!(matches!(
            gaps_in_window(&s, &Window::progression(1, 0), WindowCount::Gaps),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn test_semigroup_rejects_bad_generators() {
        assert!(matches!(
            SemigroupProblem::new(vec![4, 6]),
            Err(Error::BadInput(_))
        ));
        assert!(matches!(
            SemigroupProblem::new(vec![7]),
            Err(Error::BadInput(_))
        ));
        assert!(matches!(
            SemigroupProblem::new(vec![0, 3]),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn test_hilbert_basis_axes_cone() {
        let problem = HilbertBasisProblem::new(vec![iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let f = hilbert_basis_genfun(&problem).unwrap();
        let points = support_in_box(&f, &[0, 0], &[1, 1]);
        let expect: BTreeSet<_> = [iv(&[1, 0]), iv(&[0, 1])].into_iter().collect();
        assert_eq!(points, expect);
    }

    #[test]
    fn test_hilbert_basis_sheared_cones() {
        // The cone over (1, 0) and (1, k) needs every intermediate
        // slope: its basis is (1, 0), (1, 1), ..., (1, k).
        for k in [2i64, 3] {
            let problem = HilbertBasisProblem::new(vec![iv(&[1, 0]), iv(&[1, k])]).unwrap();
            let f = hilbert_basis_genfun(&problem).unwrap();
            let points = support_in_box(&f, &[0, 0], &[2, k]);
            let expect: BTreeSet<_> = (0..=k).map(|j| iv(&[1, j])).collect();
            assert_eq!(points, expect, "shear {k}");
            let brute = brute_hilbert_basis(problem.generators()).unwrap();
            let brute: BTreeSet<_> = brute.into_iter().collect();
            assert_eq!(points, brute, "shear {k}");
        }
    }

    #[test]
    fn test_hilbert_basis_negative_determinant() {
        let problem = HilbertBasisProblem::new(vec![iv(&[1, 0]), iv(&[1, -2])]).unwrap();
        let f = hilbert_basis_genfun(&problem).unwrap();
        let points = support_in_box(&f, &[0, -2], &[2, 0]);
        let brute: BTreeSet<_> = brute_hilbert_basis(problem.generators())
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(points, brute);
    }

    #[test]
    fn test_hilbert_basis_three_dimensional() {
        let problem =
            HilbertBasisProblem::new(vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 2])])
                .unwrap();
        let f = hilbert_basis_genfun(&problem).unwrap();
        let points = support_in_box(&f, &[0, 0, 0], &[2, 2, 2]);
        let brute: BTreeSet<_> = brute_hilbert_basis(problem.generators())
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(points, brute);
        // The interior ray (1, 1, 1) is indecomposable here.
        assert!(points.contains(&iv(&[1, 1, 1])));
    }

    #[test]
    fn test_hilbert_basis_rejects_bad_input() {
        assert!(matches!(
            HilbertBasisProblem::new(vec![iv(&[1, 2]), iv(&[2, 4])]),
            Err(Error::DependentInput(_))
        ));
        assert!(matches!(
            HilbertBasisProblem::new(vec![iv(&[1, 2])]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            HilbertBasisProblem::new(vec![]),
            Err(Error::BadInput(_))
        ));
    }
}
