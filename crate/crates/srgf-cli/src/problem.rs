//! Problem file parsing.
//!
//! Files are line-oriented UTF-8 text.  Blank lines and lines starting
//! with `#` are ignored; every other line is a directive followed by
//! space-separated fields.  Integers are arbitrary-precision decimal
//! text.  The first directive is always the version header `srgf 1`,
//! the second `problem <kind>`:
//!
//! ```text
//! srgf 1
//! problem polytope
//! dim 2
//! rows 4
//! 1 0 9
//! -1 0 0
//! 0 1 9
//! 0 -1 0
//! ```
//!
//! An inequality row `a1 ... ad b` reads `a1 x1 + ... + ad xd <= b`.
//! The other kinds:
//!
//! * `projection` — a polytope block, then `map <k>` and `k` rows of
//!   `d` integers mapping `x` to `Mx`.
//! * `frobenius` — `generators a1 a2 ...`, the coprime positive
//!   generators of a numerical semigroup.
//! * `hilbert-basis` — `dim <d>`, `generators <d>`, then one cone
//!   generator per line (`d` integers each).
//! * `boolean` — one or more `set <name>` directives, each followed by
//!   a polytope block, then a single `expr <s-expression>` over the set
//!   names with operators `union`, `intersect`, `difference`:
//!   `expr (difference (union A B) C)`.

use srgf::applications::{HilbertBasisProblem, SemigroupProblem};
use srgf::exactmath::{Int, IntMatrix, IntVector};
use srgf::genfun::SetExpr;
use srgf::polyhedra::Polyhedron;
use srgf::projection::LatticeProjection;
use srgf::{Error, Result};
use std::str::FromStr;

/// A parsed problem file.
pub enum Problem {
    Polytope(Polyhedron),
    Projection {
        polytope: Polyhedron,
        map: LatticeProjection,
    },
    Frobenius(SemigroupProblem),
    HilbertBasis(HilbertBasisProblem),
    Boolean {
        sets: Vec<Polyhedron>,
        expr: SetExpr,
    },
}

/// Parse a problem file's full text.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut cursor = Cursor::new(text);
    let header = cursor.next_line("version header")?;
    if header.fields != ["srgf", "1"] {
        return Err(header.error("expected the version header `srgf 1`"));
    }
    let kind_line = cursor.next_line("problem kind")?;
    let kind = match kind_line.fields.as_slice() {
        [k, rest @ ..] if *k == "problem" => match rest {
            [kind] => kind.to_string(),
            _ => return Err(kind_line.error("expected `problem <kind>`")),
        },
        _ => return Err(kind_line.error("expected `problem <kind>`")),
    };
    let problem = match kind.as_str() {
        "polytope" => Problem::Polytope(parse_polytope_block(&mut cursor)?),
        "projection" => {
            let polytope = parse_polytope_block(&mut cursor)?;
            let map = parse_map_block(&mut cursor, polytope.ambient_dim())?;
            Problem::Projection { polytope, map }
        }
        "frobenius" => Problem::Frobenius(parse_generators_line(&mut cursor)?),
        "hilbert-basis" => Problem::HilbertBasis(parse_cone_block(&mut cursor)?),
        "boolean" => parse_boolean_block(&mut cursor)?,
        other => {
            return Err(kind_line.error(&format!(
                "unknown problem kind {other:?} (expected polytope, projection, \
                 frobenius, hilbert-basis, or boolean)"
            )))
        }
    };
    if let Some(line) = cursor.peek() {
        return Err(line.error("trailing content after the problem body"));
    }
    Ok(problem)
}

/// One meaningful line: its number (for diagnostics) and its fields.
struct Line {
    number: usize,
    fields: Vec<String>,
}

impl Line {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("line {}: {msg}", self.number))
    }

    /// The line's fields after a fixed directive word.
    fn tail(&self, directive: &str) -> Result<&[String]> {
        match self.fields.first() {
            Some(word) if word == directive => Ok(&self.fields[1..]),
            _ => Err(self.error(&format!("expected a `{directive}` directive"))),
        }
    }

    /// A directive carrying exactly one decimal count.
    fn count_after(&self, directive: &str) -> Result<usize> {
        match self.tail(directive)? {
            [n] => n
                .parse::<usize>()
                .map_err(|_| self.error(&format!("bad count {n:?}"))),
            _ => Err(self.error(&format!("expected `{directive} <count>`"))),
        }
    }

    fn integers(&self) -> Result<Vec<Int>> {
        self.fields
            .iter()
            .map(|f| Int::from_str(f).map_err(|_| self.error(&format!("bad integer {f:?}"))))
            .collect()
    }
}

struct Cursor {
    lines: Vec<Line>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Cursor {
        let lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .map(|(i, l)| Line {
                number: i + 1,
                fields: l.split_whitespace().map(str::to_string).collect(),
            })
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&Line> {
        self.lines.get(self.pos)
    }

    fn next_line(&mut self, wanted: &str) -> Result<&Line> {
        let line = self.lines.get(self.pos).ok_or_else(|| {
            Error::Parse(format!("unexpected end of file: missing {wanted}"))
        })?;
        self.pos += 1;
        Ok(line)
    }
}

fn parse_polytope_block(cursor: &mut Cursor) -> Result<Polyhedron> {
    let dim = cursor.next_line("`dim` directive")?.count_after("dim")?;
    if dim == 0 {
        return Err(Error::Parse("polytope dimension must be positive".into()));
    }
    let rows = cursor.next_line("`rows` directive")?.count_after("rows")?;
    let mut pairs = Vec::with_capacity(rows);
    for _ in 0..rows {
        let line = cursor.next_line("an inequality row")?;
        let mut entries = line.integers()?;
        if entries.len() != dim + 1 {
            return Err(line.error(&format!(
                "expected {} integers (coefficients then bound), found {}",
                dim + 1,
                entries.len()
            )));
        }
        let bound = entries.pop().expect("checked length");
        pairs.push((IntVector::new(entries), bound));
    }
    Ok(Polyhedron::from_rows(dim, pairs))
}

fn parse_map_block(cursor: &mut Cursor, dim: usize) -> Result<LatticeProjection> {
    let k = cursor.next_line("`map` directive")?.count_after("map")?;
    if k == 0 || k > dim {
        return Err(Error::Parse(format!(
            "map must have between 1 and {dim} rows, found {k}"
        )));
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let line = cursor.next_line("a map row")?;
        let entries = line.integers()?;
        if entries.len() != dim {
            return Err(line.error(&format!(
                "expected {dim} integers, found {}",
                entries.len()
            )));
        }
        rows.push(IntVector::new(entries));
    }
    Ok(LatticeProjection::new(IntMatrix::from_rows(rows)))
}

fn parse_generators_line(cursor: &mut Cursor) -> Result<SemigroupProblem> {
    let line = cursor.next_line("`generators` directive")?;
    let tail = line.tail("generators")?;
    if tail.is_empty() {
        return Err(line.error("expected `generators a1 a2 ...`"));
    }
    let gens = tail
        .iter()
        .map(|f| f.parse::<u64>().map_err(|_| line.error(&format!("bad generator {f:?}"))))
        .collect::<Result<Vec<u64>>>()?;
    SemigroupProblem::new(gens)
}

fn parse_cone_block(cursor: &mut Cursor) -> Result<HilbertBasisProblem> {
    let dim = cursor.next_line("`dim` directive")?.count_after("dim")?;
    let n = cursor
        .next_line("`generators` directive")?
        .count_after("generators")?;
    if n != dim {
        return Err(Error::Parse(format!(
            "a simplicial cone in dimension {dim} needs exactly {dim} generators, found {n}"
        )));
    }
    let mut gens = Vec::with_capacity(n);
    for _ in 0..n {
        let line = cursor.next_line("a generator row")?;
        let entries = line.integers()?;
        if entries.len() != dim {
            return Err(line.error(&format!(
                "expected {dim} integers, found {}",
                entries.len()
            )));
        }
        gens.push(IntVector::new(entries));
    }
    HilbertBasisProblem::new(gens)
}

fn parse_boolean_block(cursor: &mut Cursor) -> Result<Problem> {
    let mut names: Vec<String> = Vec::new();
    let mut sets: Vec<Polyhedron> = Vec::new();
    loop {
        let line = cursor.next_line("a `set` or `expr` directive")?;
        match line.fields.first().map(String::as_str) {
            Some("set") => {
                let name = match line.fields.as_slice() {
                    [_, name] => name.clone(),
                    _ => return Err(line.error("expected `set <name>`")),
                };
                if names.contains(&name) {
                    return Err(line.error(&format!("duplicate set name {name:?}")));
                }
                let number = line.number;
                let polytope = parse_polytope_block(cursor)?;
                if let Some(first) = sets.first() {
                    if first.ambient_dim() != polytope.ambient_dim() {
                        return Err(Error::Parse(format!(
                            "line {number}: set {name:?} has dimension {}, expected {}",
                            polytope.ambient_dim(),
                            first.ambient_dim()
                        )));
                    }
                }
                names.push(name);
                sets.push(polytope);
            }
            Some("expr") => {
                if sets.is_empty() {
                    return Err(line.error("`expr` before any `set` block"));
                }
                let text = line.fields[1..].join(" ");
                let expr = parse_set_expr(&text, &names)
                    .map_err(|msg| line.error(&msg))?;
                return Ok(Problem::Boolean { sets, expr });
            }
            _ => return Err(line.error("expected a `set` or `expr` directive")),
        }
    }
}

/// Parse `(op lhs rhs)` s-expressions whose atoms are set names.
fn parse_set_expr(text: &str, names: &[String]) -> std::result::Result<SetExpr, String> {
    let tokens = tokenize_sexpr(text);
    let mut pos = 0;
    let expr = parse_sexpr_node(&tokens, &mut pos, names)?;
    if pos != tokens.len() {
        return Err(format!("trailing tokens after expression: {:?}", &tokens[pos..]));
    }
    Ok(expr)
}

fn tokenize_sexpr(text: &str) -> Vec<String> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    spaced.split_whitespace().map(str::to_string).collect()
}

fn parse_sexpr_node(
    tokens: &[String],
    pos: &mut usize,
    names: &[String],
) -> std::result::Result<SetExpr, String> {
    let token = tokens
        .get(*pos)
        .ok_or_else(|| "unexpected end of expression".to_string())?;
    *pos += 1;
    if token == "(" {
        let op = tokens
            .get(*pos)
            .ok_or_else(|| "missing operator after `(`".to_string())?
            .clone();
        *pos += 1;
        let lhs = Box::new(parse_sexpr_node(tokens, pos, names)?);
        let rhs = Box::new(parse_sexpr_node(tokens, pos, names)?);
        match tokens.get(*pos) {
            Some(t) if t == ")" => *pos += 1,
            _ => return Err(format!("expected `)` to close the {op} form")),
        }
        match op.as_str() {
            "union" => Ok(SetExpr::Union(lhs, rhs)),
            "intersect" => Ok(SetExpr::Intersect(lhs, rhs)),
            "difference" => Ok(SetExpr::Difference(lhs, rhs)),
            other => Err(format!(
                "unknown operator {other:?} (expected union, intersect, or difference)"
            )),
        }
    } else if token == ")" {
        Err("unexpected `)`".to_string())
    } else {
        let index = names
            .iter()
            .position(|n| n == token)
            .ok_or_else(|| format!("unknown set name {token:?}"))?;
        Ok(SetExpr::Atom(index))
    }
}
