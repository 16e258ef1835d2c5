//! Output rendering: plain text and the `--format structured` mirror.
//!
//! Plain output is the canonical form straight from the library (one
//! line per generating function, exact decimal integers and `p/q`
//! rationals everywhere).  Structured output carries the same fields
//! one per line so downstream tooling can read them without a
//! serialization library:
//!
//! ```text
//! genfun
//! dim 1
//! terms 2
//! term 1 ; (0) ; (1)
//! term -1 ; (10) ; (1)
//! ```
//!
//! Each `term` line lists the coefficient, the numerator exponent
//! vector, and one field per denominator factor, all ` ; ` separated,
//! with vectors in the same `(a,b,...)` shape the canonical text form
//! uses.

use srgf::exactmath::{IntVector, Rational};
use srgf::genfun::GenFun;
use std::collections::BTreeMap;

/// Output mode selected by `--format`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

pub fn render_vector(v: &IntVector) -> String {
    let body: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("({})", body.join(","))
}

/// A scalar result such as a count or a Frobenius number.
pub fn print_scalar(label: &str, value: impl std::fmt::Display, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Structured => println!("{label} {value}"),
    }
}

pub fn print_genfun(f: &GenFun, format: Format) {
    match format {
        Format::Text => println!("{f}"),
        Format::Structured => {
            println!("genfun");
            println!("dim {}", f.dim());
            println!("terms {}", f.terms().len());
            for term in f.terms() {
                let mut fields = vec![
                    term.coefficient.to_string(),
                    render_vector(&term.numerator),
                ];
                fields.extend(term.denominators.iter().map(render_vector));
                println!("term {}", fields.join(" ; "));
            }
        }
    }
}

/// The nonzero coefficients of an expansion, sorted by exponent.
pub fn print_expansion(dim: usize, points: &BTreeMap<IntVector, Rational>, format: Format) {
    if format == Format::Structured {
        println!("expand");
        println!("dim {dim}");
        println!("points {}", points.len());
    }
    for (p, c) in points {
        match format {
            Format::Text => println!("{} {c}", render_vector(p)),
            Format::Structured => println!("point {} ; {c}", render_vector(p)),
        }
    }
}

/// An explicit finite set of lattice vectors, one per line.
pub fn print_vectors(label: &str, dim: usize, vectors: &[IntVector], format: Format) {
    if format == Format::Structured {
        println!("{label}");
        println!("dim {dim}");
        println!("elements {}", vectors.len());
    }
    for v in vectors {
        match format {
            Format::Text => println!("{}", render_vector(v)),
            Format::Structured => println!("element {}", render_vector(v)),
        }
    }
}
