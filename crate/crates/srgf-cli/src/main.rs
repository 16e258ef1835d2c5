//! Command-line front end for the generating-function pipeline.
//!
//! Problems arrive as small text files (see [`problem`] for the
//! format); results leave as canonical rational-function text, exact
//! counts, or explicit expansions.  Every printed number is exact —
//! arbitrary-precision decimal integers and `p/q` rationals, never
//! floating point.  The process exits 0 exactly when the requested
//! computation completed; malformed input or an undefined mathematical
//! answer (an unbounded count, a pole, an enumeration past its cap)
//! reports the originating error on stderr and exits nonzero.

use srgf::applications::{
    count_gaps, frobenius_number, gaps_in_window, hilbert_basis_genfun, semigroup_genfun,
    SemigroupProblem, Window, WindowCount,
};
use srgf::barvinok::polytope_genfun;
use srgf::exactmath::{Int, IntVector};
use srgf::genfun::{boolean_combine, count, GenFun};
use srgf::projection::project_genfun;
use srgf::Error;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::str::FromStr;

mod problem;
mod render;
mod selfcheck;

use problem::Problem;
use render::Format;

const USAGE: &str = "\
usage: srgf <command> [arguments] [--format text|structured]

commands:
  count <file>                     lattice-point count of the problem's set
  genfun <file>                    canonical rational-function text of the set
  project <file>                   generating function of the image (projection files)
  frobenius <a1> <a2> ...          largest integer outside the numerical semigroup
  gaps <a1> <a2> ...               number of gaps of the numerical semigroup
       [--window lo:hi]            ... restricted to an interval
       [--progression r:q]         ... restricted to r, r+q, r+2q, ...
  hilbert-basis <file>             minimal generating set of a simplicial cone
  expand <file> --box lo:hi,...    explicit coefficients inside a box
  selfcheck                        cross-validate the pipeline against brute force

Problem files are line-oriented text with an `srgf 1` header; see the
repository README for the format.  Exit status is 0 exactly when the
computation completed.
";

enum CliError {
    Usage(String),
    Io(String),
    Math(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Math(e)
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!();
            eprint!("{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::Usage("missing command".into()));
    };
    let rest = &args[1..];
    match command.as_str() {
        "count" => cmd_count(rest),
        "genfun" => cmd_genfun(rest),
        "project" => cmd_project(rest),
        "frobenius" => cmd_frobenius(rest),
        "gaps" => cmd_gaps(rest),
        "hilbert-basis" => cmd_hilbert_basis(rest),
        "expand" => cmd_expand(rest),
        "selfcheck" => cmd_selfcheck(rest),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

/// Split `--name value` / `--name=value` flags from positional
/// arguments, admitting only the listed flag names.
fn split_args(
    args: &[String],
    allowed: &[&str],
) -> Result<(Vec<String>, BTreeMap<String, String>), CliError> {
    let mut positional = Vec::new();
    let mut flags = BTreeMap::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        if let Some(name) = arg.strip_prefix("--") {
            let (name, value) = match name.split_once('=') {
                Some((n, v)) => (n.to_string(), v.to_string()),
                None => {
                    let value = it.next().ok_or_else(|| {
                        CliError::Usage(format!("flag --{name} needs a value"))
                    })?;
                    (name.to_string(), value.clone())
                }
            };
            if !allowed.contains(&name.as_str()) {
                return Err(CliError::Usage(format!("unknown flag --{name}")));
            }
            if flags.insert(name.clone(), value).is_some() {
                return Err(CliError::Usage(format!("flag --{name} given twice")));
            }
        } else {
            positional.push(arg.clone());
        }
    }
    Ok((positional, flags))
}

fn parse_format(flags: &BTreeMap<String, String>) -> Result<Format, CliError> {
    match flags.get("format").map(String::as_str) {
        None | Some("text") => Ok(Format::Text),
        Some("structured") => Ok(Format::Structured),
        Some(other) => Err(CliError::Usage(format!(
            "unknown format {other:?} (expected text or structured)"
        ))),
    }
}

fn load_problem(path: &str) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    Ok(problem::parse_problem(&text)?)
}

/// The generating function a problem file denotes.
fn genfun_of(problem: &Problem) -> Result<GenFun, Error> {
    match problem {
        Problem::Polytope(p) => polytope_genfun(p),
        Problem::Projection { polytope, map } => project_genfun(polytope, map),
        Problem::Frobenius(sp) => semigroup_genfun(sp),
        Problem::HilbertBasis(hp) => hilbert_basis_genfun(hp),
        Problem::Boolean { sets, expr } => {
            let funs = sets
                .iter()
                .map(polytope_genfun)
                .collect::<Result<Vec<GenFun>, Error>>()?;
            boolean_combine(&funs, expr)
        }
    }
}

fn one_file(positional: &[String]) -> Result<&str, CliError> {
    match positional {
        [path] => Ok(path),
        _ => Err(CliError::Usage("expected exactly one problem file".into())),
    }
}

fn cmd_count(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format"])?;
    let format = parse_format(&flags)?;
    let problem = load_problem(one_file(&positional)?)?;
    let f = genfun_of(&problem)?;
    let n = count(&f)?;
    render::print_scalar("count", n, format);
    Ok(())
}

fn cmd_genfun(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format"])?;
    let format = parse_format(&flags)?;
    let problem = load_problem(one_file(&positional)?)?;
    let f = genfun_of(&problem)?;
    render::print_genfun(&f, format);
    Ok(())
}

fn cmd_project(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format"])?;
    let format = parse_format(&flags)?;
    let problem = load_problem(one_file(&positional)?)?;
    let Problem::Projection { polytope, map } = &problem else {
        return Err(Error::BadInput(
            "the file does not define a projection problem".into(),
        )
        .into());
    };
    let f = project_genfun(polytope, map)?;
    render::print_genfun(&f, format);
    Ok(())
}

fn parse_generators(positional: &[String]) -> Result<SemigroupProblem, CliError> {
    if positional.is_empty() {
        return Err(CliError::Usage("expected generators a1 a2 ...".into()));
    }
    let gens = positional
        .iter()
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad generator {s:?}")))
        })
        .collect::<Result<Vec<u64>, CliError>>()?;
    Ok(SemigroupProblem::new(gens)?)
}

fn cmd_frobenius(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format"])?;
    let format = parse_format(&flags)?;
    let problem = parse_generators(&positional)?;
    let n = frobenius_number(&problem)?;
    render::print_scalar("frobenius", n, format);
    Ok(())
}

/// A `lo:hi` or `r:q` pair of decimal numbers.
fn parse_pair(flag: &str, text: &str) -> Result<(u64, u64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if let [a, b] = parts.as_slice() {
        if let (Ok(a), Ok(b)) = (a.parse::<u64>(), b.parse::<u64>()) {
            return Ok((a, b));
        }
    }
    Err(CliError::Usage(format!(
        "flag --{flag} expects two numbers as `a:b`, found {text:?}"
    )))
}

fn cmd_gaps(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format", "window", "progression"])?;
    let format = parse_format(&flags)?;
    let problem = parse_generators(&positional)?;
    let window = flags
        .get("window")
        .map(|t| parse_pair("window", t))
        .transpose()?;
    let progression = flags
        .get("progression")
        .map(|t| parse_pair("progression", t))
        .transpose()?;
    let n = match (window, progression) {
        (None, None) => count_gaps(&problem)?,
        (Some((lo, hi)), None) => {
            gaps_in_window(&problem, &Window::interval(lo, hi), WindowCount::Gaps)?
        }
        (None, Some((r, q))) => {
            gaps_in_window(&problem, &Window::progression(r, q), WindowCount::Gaps)?
        }
        (Some((lo, hi)), Some((r, q))) => gaps_in_window(
            &problem,
            &Window::progression_within(r, q, lo, hi),
            WindowCount::Gaps,
        )?,
    };
    render::print_scalar("gaps", n, format);
    Ok(())
}

fn cmd_hilbert_basis(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format"])?;
    let format = parse_format(&flags)?;
    let problem = load_problem(one_file(&positional)?)?;
    let Problem::HilbertBasis(hp) = &problem else {
        return Err(Error::BadInput(
            "the file does not define a hilbert-basis problem".into(),
        )
        .into());
    };
    let f = hilbert_basis_genfun(hp)?;
    // Basis elements live in the generators' fundamental
    // parallelepiped, so this box catches every one of them.
    let u = hp.generators();
    let d = u.rows();
    let mut lo = IntVector::zeros(d);
    let mut hi = IntVector::zeros(d);
    let zero = Int::from(0);
    for j in 0..d {
        for i in 0..u.cols() {
            let e = u.get(j, i);
            if *e < zero {
                lo.set_entry(j, lo.entry(j) + e);
            } else {
                hi.set_entry(j, hi.entry(j) + e);
            }
        }
    }
    let points = f.expand(&lo, &hi)?;
    let mut basis = Vec::with_capacity(points.len());
    for (p, c) in points {
        assert!(c == srgf::exactmath::rat(1, 1), "basis indicator expansion");
        basis.push(p);
    }
    render::print_vectors("hilbert-basis", d, &basis, format);
    Ok(())
}

/// A `lo:hi,lo:hi,...` box, one pair per coordinate.
fn parse_box(text: &str, dim: usize) -> Result<(IntVector, IntVector), CliError> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for part in text.split(',') {
        let bad = || {
            CliError::Usage(format!(
                "flag --box expects `lo:hi` pairs separated by commas, found {part:?}"
            ))
        };
        let (l, h) = part.split_once(':').ok_or_else(bad)?;
        lo.push(Int::from_str(l.trim()).map_err(|_| bad())?);
        hi.push(Int::from_str(h.trim()).map_err(|_| bad())?);
    }
    if lo.len() != dim {
        return Err(CliError::Usage(format!(
            "--box lists {} coordinate ranges, the set has dimension {dim}",
            lo.len()
        )));
    }
    Ok((IntVector::new(lo), IntVector::new(hi)))
}

fn cmd_expand(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format", "box"])?;
    let format = parse_format(&flags)?;
    let spec = flags
        .get("box")
        .ok_or_else(|| CliError::Usage("expand needs --box lo:hi,...".into()))?;
    let problem = load_problem(one_file(&positional)?)?;
    let f = genfun_of(&problem)?;
    let (lo, hi) = parse_box(spec, f.dim())?;
    let points = f.expand(&lo, &hi)?;
    render::print_expansion(f.dim(), &points, format);
    Ok(())
}

fn cmd_selfcheck(args: &[String]) -> Result<(), CliError> {
    let (positional, flags) = split_args(args, &["format"])?;
    let _ = parse_format(&flags)?;
    if !positional.is_empty() {
        return Err(CliError::Usage("selfcheck takes no arguments".into()));
    }
    selfcheck::run().map_err(CliError::Io)
}
