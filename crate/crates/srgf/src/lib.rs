//! Short rational generating functions for lattice point sets.
//!
//! A set `S` of integer points is encoded as a rational function
//!
//! ```text
//! f(S; x) = sum_i  alpha_i * x^{p_i} / prod_j (1 - x^{a_ij})
//! ```
//!
//! with rational coefficients `alpha_i`, integer exponent vectors `p_i`,
//! and nonzero integer vectors `a_ij`, so that expanding every term as a
//! geometric series on a common convergence region and adding up
//! reproduces the indicator sum `sum_{m in S} x^m`.  The crate builds such
//! encodings from rational polytopes, evaluates them (counting), and
//! closes them under monomial substitution, Hadamard products, Boolean
//! operations, and projections, all in exact arithmetic.  On top of the
//! core pipeline sit numerical-semigroup applications (Frobenius numbers,
//! gap counting) and Hilbert basis computation for simplicial cones.
//!
//! Module map:
//!
//! * [`exactmath`] — big integers/rationals, integer matrices, Smith
//!   normal form, LLL reduction, affine lattice systems.
//! * [`polyhedra`] — H-form rational polyhedra, vertex/face enumeration,
//!   tangent cones, exact LP, width machinery.
//! * [`barvinok`] — signed unimodular cone decomposition and the
//!   polytope-to-generating-function construction.
//! * [`genfun`] — the generating function type and its operation algebra.
//! * [`projection`] — generating functions of projections of lattice
//!   point sets (monomial maps, fiber partitions, minimum selection).
//! * [`applications`] — numerical semigroups and Hilbert bases.
//! * [`oracle`] — independent brute-force enumeration used by the tests;
//!   shares nothing with the pipeline beyond `exactmath`.

pub mod applications;
pub mod barvinok;
pub mod exactmath;
pub mod genfun;
pub mod oracle;
pub mod polyhedra;
pub mod projection;

use std::fmt;

/// Errors shared across the pipeline.
///
/// Every failure is reported; no operation silently degrades to an
/// approximate or partial answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input vectors expected to be linearly independent are not.
    DependentInput(String),
    /// A dimension mismatch between operands.
    DimensionMismatch(String),
    /// The polyhedron is empty where a nonempty one is required.
    EmptyPolyhedron,
    /// The polyhedron is unbounded where a bounded one is required.
    Unbounded(String),
    /// The queried point is not a vertex of the polyhedron.
    NotAVertex,
    /// A zero vector was supplied where a nonzero one is required.
    ZeroVector(String),
    /// A cone operation received a non-simplicial or degenerate cone.
    BadCone(String),
    /// Specialization at a pole: the generating function diverges there.
    Divergent(String),
    /// A search (certificate direction, partition, ...) exhausted its
    /// desk-scale budget without finding a witness.
    SearchExhausted(String),
    /// An enumeration exceeded the configured safety cap.
    EnumerationCap(String),
    /// Invalid problem data (non-coprime generators, bad window, ...).
    BadInput(String),
    /// Malformed text in the generating function or problem file formats.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DependentInput(s) => write!(f, "linearly dependent input: {s}"),
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::EmptyPolyhedron => write!(f, "polyhedron is empty"),
            Error::Unbounded(s) => write!(f, "polyhedron is unbounded: {s}"),
            Error::NotAVertex => write!(f, "point is not a vertex"),
            Error::ZeroVector(s) => write!(f, "zero vector: {s}"),
            Error::BadCone(s) => write!(f, "bad cone: {s}"),
            Error::Divergent(s) => write!(f, "divergent specialization: {s}"),
            Error::SearchExhausted(s) => write!(f, "search exhausted: {s}"),
            Error::EnumerationCap(s) => write!(f, "enumeration cap exceeded: {s}"),
            Error::BadInput(s) => write!(f, "bad input: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
