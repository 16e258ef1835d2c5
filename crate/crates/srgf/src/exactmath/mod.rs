//! Exact scalars and lattice linear algebra.
//!
//! Everything downstream works over arbitrary-precision integers
//! ([`Int`]) and rationals ([`Rational`]); there is no floating point
//! anywhere in the pipeline.  This module provides dense integer vectors
//! and matrices, fraction-free determinants, rational Gaussian
//! elimination, Smith normal form, exact LLL reduction, and integral
//! solving of affine lattice systems.

mod affine;
mod lll;
mod ratlin;
mod snf;

pub use affine::{solve_affine_lattice, AffineLatticeSolution};
pub use lll::{lll_reduce, lll_reduce_with};
pub use ratlin::{rat_invert, rat_kernel, rat_rank, rat_solve_square};
pub use snf::{smith_normal_form, SmithDecomposition};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Arbitrary-precision integer used for all exponents and lattice data.
pub type Int = BigInt;

/// Arbitrary-precision rational.  The backing type keeps values reduced
/// with a positive denominator, which is exactly the invariant the
/// pipeline needs.
pub type Rational = BigRational;

/// Shorthand for small integer literals.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for small rational literals; panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(int(p), int(q))
}

/// Rational with denominator one.
pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

/// A dense integer vector.  Equality, ordering (lexicographic), and
/// hashing follow the entry list, so vectors can key sets and maps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector {
    entries: Vec<Int>,
}

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Self {
        IntVector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector {
            entries: entries.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector {
            entries: vec![Int::zero(); dim],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = Int::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> &Int {
        &self.entries[i]
    }

    pub fn set_entry(&mut self, i: usize, v: Int) {
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        let mut acc = Int::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc += a * b;
        }
        acc
    }

    /// Dot product against a rational point of the same dimension.
    pub fn dot_rat(&self, other: &[Rational]) -> Rational {
        assert_eq!(self.dim(), other.len(), "dot of mismatched dimensions");
        let mut acc = Rational::zero();
        for (a, b) in self.entries.iter().zip(other.iter()) {
            acc += rat_int(a) * b;
        }
        acc
    }

    pub fn scale(&self, s: &Int) -> IntVector {
        IntVector {
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Greatest common divisor of the entries (zero for the zero vector).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for e in &self.entries {
            g = g.gcd(e);
        }
        g
    }

    /// The primitive vector on the same ray; `None` for the zero vector.
    pub fn primitive(&self) -> Option<IntVector> {
        let g = self.content();
        if g.is_zero() {
            return None;
        }
        Some(IntVector {
            entries: self.entries.iter().map(|e| e / &g).collect(),
        })
    }

    pub fn norm_sq(&self) -> Int {
        self.entries.iter().map(|e| e * e).sum()
    }

    pub fn norm_inf(&self) -> Int {
        let mut m = Int::zero();
        for e in &self.entries {
            let a = e.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Entrywise conversion to a rational point.
    pub fn to_rat(&self) -> Vec<Rational> {
        self.entries.iter().map(rat_int).collect()
    }

    /// Concatenation, used to build product-space data.
    pub fn concat(&self, other: &IntVector) -> IntVector {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        IntVector { entries: e }
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim(), "add of mismatched dimensions");
        IntVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim(), "sub of mismatched dimensions");
        IntVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.dim()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.dim(), c, "ragged rows");
            data.extend(row.entries().iter().cloned());
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<IntVector>) -> Self {
        let c = cols.len();
        let r = cols.first().map(|v| v.dim()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.dim(), r, "ragged columns");
            for i in 0..r {
                m.set(i, j, col.entry(i).clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| IntVector::from_i64(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "mul of mismatched shapes");
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "mul_vec of mismatched shapes");
        IntVector::new((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.  The empty
    /// matrix has determinant one.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// Rank over the rationals (equivalently over the integers).
    pub fn rank(&self) -> usize {
        rat_rank(&self.to_rat_rows())
    }

    /// Rows as rational vectors, for elimination routines.
    pub fn to_rat_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_rat()).collect()
    }

    /// Exact rational inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Vec<Vec<Rational>>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        rat_invert(&self.to_rat_rows())
    }

    /// Adjugate matrix: `adj(M) * M = det(M) * I`.  Requires a nonzero
    /// determinant.
    pub fn adjugate(&self) -> Option<IntMatrix> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let inv = self.inverse().expect("nonzero det must be invertible");
        let dr = rat_int(&d);
        let n = self.rows;
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &inv[i][j] * &dr;
                debug_assert!(v.is_integer(), "adjugate entry must be integral");
                adj.set(i, j, v.to_integer());
            }
        }
        Some(adj)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Clear denominators of a rational vector and divide out the content,
/// producing the primitive integer vector on the same ray.  `None` for
/// the zero vector.
pub fn primitive_from_rat(v: &[Rational]) -> Option<IntVector> {
    let mut lcm = Int::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    let ints: Vec<Int> = v
        .iter()
        .map(|e| {
            let scaled = e * rat_int(&lcm);
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    IntVector::new(ints).primitive()
}

/// Floor of a rational as an integer.
pub fn rat_floor(v: &Rational) -> Int {
    v.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn rat_ceil(v: &Rational) -> Int {
    v.ceil().to_integer()
}
