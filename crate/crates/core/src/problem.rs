//! Problem files: a quiver, a field, an order, relations and optionally a
//! module presentation.
//!
//! ```text
//! # comment
//! vertices: v1, v2
//! arrows:
//!   a: v1 -> v2
//! field: Q                      (or GF(p))
//! order: lenlex vertices(v2<v1) arrows(a)
//! relations:
//!   ...one element per line...
//! module: targets(v1) sources(v2) matrix([a])
//! steps: 4
//! ```
//! A block's value may continue on indented lines. `order` defaults to
//! declaration order (earlier declared is larger). Optional settings:
//! `steps`, `degree-cap`, `length-cap`, `verify: on|off`.

use std::fmt::Write as _;

use crate::algebra::{Element, PathAlgebra};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::matrix::ElementMatrix;
use crate::order::AdmissibleOrder;
use crate::quiver::{Quiver, VertexId};
use crate::syntax::{parse_element_located, render_element};

const KEYS: &[&str] = &[
    "vertices",
    "arrows",
    "field",
    "order",
    "relations",
    "module",
    "steps",
    "degree-cap",
    "length-cap",
    "verify",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub targets: Vec<VertexId>,
    pub sources: Vec<VertexId>,
    pub matrix: ElementMatrix,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub algebra: PathAlgebra,
    pub relations: Vec<Element>,
    pub module: Option<ModuleSpec>,
    pub steps: Option<usize>,
    pub degree_cap: Option<usize>,
    pub length_cap: Option<usize>,
    pub verify: Option<bool>,
}

/// Text with the source location of every byte.
#[derive(Clone, Debug, Default)]
struct Spanned {
    text: String,
    pos: Vec<(usize, usize)>,
    /// Location just past the end.
    end: (usize, usize),
}

impl Spanned {
    fn new(line: usize, column: usize, text: &str) -> Self {
        let mut s = Spanned::default();
        s.push(line, column, text);
        s
    }

    fn push(&mut self, line: usize, column: usize, text: &str) {
        for k in 0..text.len() {
            self.pos.push((line, column + k));
        }
        self.text.push_str(text);
        self.end = (line, column + text.len());
    }

    fn append(&mut self, other: &Spanned) {
        if !self.text.is_empty() && !other.text.is_empty() {
            let (l, c) = self.end;
            self.pos.push((l, c));
            self.text.push(' ');
        }
        self.text.push_str(&other.text);
        self.pos.extend_from_slice(&other.pos);
        if !other.text.is_empty() {
            self.end = other.end;
        }
    }

    fn loc(&self, offset: usize) -> (usize, usize) {
        self.pos.get(offset).copied().unwrap_or(self.end)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        let (l, c) = self.loc(offset);
        Error::parse(l, c, message)
    }

    fn slice(&self, start: usize, end: usize) -> Spanned {
        Spanned {
            text: self.text[start..end].to_string(),
            pos: self.pos[start..end].to_vec(),
            end: self.loc(end),
        }
    }

    /// Trimmed copy.
    fn trim(&self) -> Spanned {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len();
        if start >= end {
            return Spanned {
                end: self.loc(start),
                ..Spanned::default()
            };
        }
        self.slice(start, end)
    }

    /// Splits on a separator byte at nesting depth zero.
    fn split_top(&self, sep: u8) -> Vec<Spanned> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (k, b) in self.text.bytes().enumerate() {
            match b {
                b'(' | b'[' => depth += 1,
                b')' | b']' => depth -= 1,
                _ if b == sep && depth == 0 => {
                    out.push(self.slice(start, k).trim());
                    start = k + 1;
                }
                _ => {}
            }
        }
        out.push(self.slice(start, self.text.len()).trim());
        out
    }
}

struct Block {
    key: String,
    line: usize,
    value: Spanned,
    items: Vec<Spanned>,
}

impl Block {
    /// Inline value followed by continuation lines, one entry each.
    fn entries(&self) -> Vec<Spanned> {
        let mut v = Vec::new();
        if !self.value.text.is_empty() {
            v.push(self.value.clone());
        }
        v.extend(self.items.iter().cloned());
        v
    }

    fn joined(&self) -> Spanned {
        let mut s = self.value.clone();
        for it in &self.items {
            s.append(it);
        }
        s
    }
}

fn blocks(text: &str) -> Result<Vec<Block>> {
    let mut out: Vec<Block> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if indent > 0 {
            let Some(b) = out.last_mut() else {
                return Err(Error::parse(line, indent + 1, "indented line outside a block"));
            };
            let t = body.trim();
            b.items.push(Spanned::new(line, indent + 1, t));
            continue;
        }
        let Some(colon) = body.find(':') else {
            return Err(Error::parse(line, 1, "expected `key: value`"));
        };
        let key = body[..colon].trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::parse(line, 1, format!("unknown block `{key}`")));
        }
        if out.iter().any(|b| b.key == key) {
            return Err(Error::parse(line, 1, format!("duplicate block `{key}`")));
        }
        let rest = &body[colon + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let value = Spanned::new(line, colon + 2 + lead, rest.trim());
        out.push(Block {
            key,
            line,
            value,
            items: Vec::new(),
        });
    }
    Ok(out)
}

fn identifier_list(s: &Spanned) -> Vec<Spanned> {
    s.split_top(b',').into_iter().filter(|x| !x.text.is_empty()).collect()
}

/// `name(...)` inside `s`, returning the inside.
fn call(s: &Spanned, name: &str) -> Result<Option<Spanned>> {
    let pat = format!("{name}(");
    let Some(start) = s.text.find(&pat) else { return Ok(None) };
    let open = start + pat.len();
    let mut depth = 1;
    for (k, b) in s.text.bytes().enumerate().skip(open) {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(Some(s.slice(open, k)));
                }
            }
            _ => {}
        }
    }
    Err(s.error(start, format!("unclosed `{name}(`")))
}

fn number(b: &Block) -> Result<usize> {
    let v = b.value.trim();
    v.text
        .parse()
        .map_err(|_| v.error(0, format!("`{}` expects a nonnegative integer", b.key)))
}

fn vertex_names(quiver: &Quiver, s: &Spanned) -> Result<Vec<VertexId>> {
    identifier_list(s)
        .iter()
        .map(|n| {
            quiver
                .vertex(&n.text)
                .ok_or_else(|| n.error(0, format!("undeclared vertex `{}`", n.text)))
        })
        .collect()
}

fn parse_order(quiver: &Quiver, b: &Block) -> Result<AdmissibleOrder> {
    let s = b.joined().trim();
    if s.text == "declaration" {
        return Ok(AdmissibleOrder::declaration_order(quiver));
    }
    if !s.text.starts_with("lenlex") {
        return Err(s.error(0, "expected `lenlex vertices(...) arrows(...)` or `declaration`"));
    }
    let vs = call(&s, "vertices")?.ok_or_else(|| s.error(0, "missing `vertices(...)`"))?;
    let arrs = call(&s, "arrows")?.ok_or_else(|| s.error(0, "missing `arrows(...)`"))?;
    let vertices = vs
        .split_top(b'<')
        .iter()
        .map(|n| {
            quiver
                .vertex(&n.text)
                .ok_or_else(|| n.error(0, format!("undeclared vertex `{}`", n.text)))
        })
        .collect::<Result<Vec<_>>>()?;
    let arrows = arrs
        .split_top(b'<')
        .iter()
        .map(|n| {
            quiver
                .arrow_id(&n.text)
                .ok_or_else(|| n.error(0, format!("undeclared arrow `{}`", n.text)))
        })
        .collect::<Result<Vec<_>>>()?;
    AdmissibleOrder::length_lex(quiver, &vertices, &arrows).map_err(|e| s.error(0, e.to_string()))
}

fn parse_field(b: &Block) -> Result<Field> {
    let s = b.value.trim();
    if s.text == "Q" {
        return Ok(Field::Rationals);
    }
    if let Some(inner) = s.text.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = inner.trim().parse().map_err(|_| s.error(3, "expected a prime modulus"))?;
        return Field::prime(p).map_err(|e| s.error(3, e.to_string()));
    }
    Err(s.error(0, "expected `Q` or `GF(p)`"))
}

fn element(alg: &PathAlgebra, s: &Spanned) -> Result<Element> {
    parse_element_located(alg, &s.text).map_err(|e| {
        let (l, c) = s.loc(e.offset);
        Error::parse(l, c, e.message)
    })
}

fn parse_module(alg: &PathAlgebra, b: &Block) -> Result<ModuleSpec> {
    let quiver = alg.quiver();
    let s = b.joined();
    let t = call(&s, "targets")?.ok_or_else(|| s.error(0, "missing `targets(...)`"))?;
    let src = call(&s, "sources")?.ok_or_else(|| s.error(0, "missing `sources(...)`"))?;
    let m = call(&s, "matrix")?.ok_or_else(|| s.error(0, "missing `matrix(...)`"))?;
    let targets = vertex_names(quiver, &t)?;
    let sources = vertex_names(quiver, &src)?;
    let rows: Vec<Spanned> = m.trim().split_top(b',');
    let rows: Vec<Spanned> = if rows.len() == 1 && rows[0].text.is_empty() { Vec::new() } else { rows };
    if rows.len() != targets.len() {
        return Err(m.error(0, format!("matrix has {} rows but {} targets are declared", rows.len(), targets.len())));
    }
    let mut matrix = ElementMatrix::zeros(targets.len(), sources.len());
    for (i, row) in rows.iter().enumerate() {
        if !(row.text.starts_with('[') && row.text.ends_with(']')) {
            return Err(row.error(0, "matrix rows are written `[x, y, ...]`"));
        }
        let inner = row.slice(1, row.text.len() - 1);
        let cells = identifier_list(&inner);
        if cells.len() != sources.len() {
            return Err(row.error(0, format!("row {} has {} entries but {} sources are declared", i + 1, cells.len(), sources.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            let x = element(alg, cell)?;
            if !x.is_zero() && x.uniform_endpoints() != Some((targets[i], sources[j])) {
                return Err(cell.error(
                    0,
                    format!(
                        "entry `{}` does not lie in {}Λ{}",
                        cell.text,
                        quiver.vertex_name(targets[i]),
                        quiver.vertex_name(sources[j])
                    ),
                ));
            }
            matrix.set(i, j, x);
        }
    }
    Ok(ModuleSpec { targets, sources, matrix })
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let blocks = blocks(text)?;
    let get = |k: &str| blocks.iter().find(|b| b.key == k);
    let vb = get("vertices").ok_or_else(|| Error::parse(1, 1, "missing `vertices:` block"))?;
    let vertex_items: Vec<Spanned> = vb.entries().iter().flat_map(identifier_list).collect();
    let vertex_names: Vec<&str> = vertex_items.iter().map(|s| s.text.as_str()).collect();

    let mut arrows: Vec<(String, String, String)> = Vec::new();
    if let Some(ab) = get("arrows") {
        for entry in ab.entries() {
            for a in identifier_list(&entry) {
                let Some(colon) = a.text.find(':') else {
                    return Err(a.error(0, "arrows are written `name: source -> target`"));
                };
                let name = a.slice(0, colon).trim();
                let ends = a.slice(colon + 1, a.text.len());
                let Some(arrow) = ends.text.find("->") else {
                    return Err(ends.error(0, "expected `source -> target`"));
                };
                let from = ends.slice(0, arrow).trim();
                let to = ends.slice(arrow + 2, ends.text.len()).trim();
                for v in [&from, &to] {
                    if !vertex_names.contains(&v.text.as_str()) {
                        return Err(v.error(0, format!("undeclared vertex `{}`", v.text)));
                    }
                }
                arrows.push((name.text, from.text, to.text));
            }
        }
    }
    let quiver = Quiver::new(&vertex_names, &arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect::<Vec<_>>())
        .map_err(|e| Error::parse(vb.line, 1, e.to_string()))?;

    let field = match get("field") {
        Some(b) => parse_field(b)?,
        None => Field::Rationals,
    };
    let order = match get("order") {
        Some(b) => parse_order(&quiver, b)?,
        None => AdmissibleOrder::declaration_order(&quiver),
    };
    let alg = PathAlgebra::new(quiver, order, field);

    let mut relations = Vec::new();
    if let Some(rb) = get("relations") {
        for entry in rb.entries() {
            let x = element(&alg, &entry)?;
            if x.is_zero() {
                continue;
            }
            relations.push(x);
        }
    }
    let module = get("module").map(|b| parse_module(&alg, b)).transpose()?;
    let steps = get("steps").map(number).transpose()?;
    let degree_cap = get("degree-cap").map(number).transpose()?;
    let length_cap = get("length-cap").map(number).transpose()?;
    let verify = get("verify")
        .map(|b| {
            let v = b.value.trim();
            match v.text.as_str() {
                "on" | "true" | "yes" => Ok(true),
                "off" | "false" | "no" => Ok(false),
                _ => Err(v.error(0, "expected `on` or `off`")),
            }
        })
        .transpose()?;
    Ok(Problem {
        algebra: alg,
        relations,
        module,
        steps,
        degree_cap,
        length_cap,
        verify,
    })
}

impl Problem {
    /// Problem-file text that parses back to an equal problem.
    pub fn render(&self) -> String {
        let alg = &self.algebra;
        let q = alg.quiver();
        let mut out = String::new();
        let vs: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
        let _ = writeln!(out, "vertices: {}", vs.join(", "));
        if q.arrow_count() > 0 {
            out.push_str("arrows:\n");
            for a in q.arrow_ids() {
                let arr = q.arrow(a);
                let _ = writeln!(out, "  {}: {} -> {}", arr.name, q.vertex_name(arr.source), q.vertex_name(arr.target));
            }
        }
        let _ = writeln!(out, "field: {}", alg.field());
        let _ = writeln!(out, "order: {}", alg.order().render(q));
        if !self.relations.is_empty() {
            out.push_str("relations:\n");
            for r in &self.relations {
                let _ = writeln!(out, "  {}", render_element(alg, r));
            }
        }
        if let Some(m) = &self.module {
            let names = |vs: &[VertexId]| vs.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>().join(", ");
            let rows: Vec<String> = (0..m.matrix.rows())
                .map(|i| {
                    let cells: Vec<String> = (0..m.matrix.cols()).map(|j| render_element(alg, m.matrix.get(i, j))).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            let _ = writeln!(
                out,
                "module: targets({}) sources({}) matrix({})",
                names(&m.targets),
                names(&m.sources),
                rows.join(", ")
            );
        }
        for (key, v) in [("steps", self.steps), ("degree-cap", self.degree_cap), ("length-cap", self.length_cap)] {
            if let Some(v) = v {
                let _ = writeln!(out, "{key}: {v}");
            }
        }
        if let Some(v) = self.verify {
            let _ = writeln!(out, "verify: {}", if v { "on" } else { "off" });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{BASIC_ORDER_ONE, BASIC_ORDER_TWO, POLYNOMIAL_XY};

    fn location(e: Error) -> (usize, usize, String) {
        match e {
            Error::Parse { line, column, message } => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn shipped_problems_parse_and_round_trip() {
        for text in [BASIC_ORDER_ONE, BASIC_ORDER_TWO, POLYNOMIAL_XY] {
            let p = parse_problem(text).unwrap();
            let again = parse_problem(&p.render()).unwrap();
            assert_eq!(p.relations, again.relations);
            assert_eq!(p.module, again.module);
            assert_eq!(p.steps, again.steps);
            assert_eq!(p.algebra.order(), again.algebra.order());
            assert_eq!(p.render(), again.render());
        }
        let p = parse_problem(BASIC_ORDER_ONE).unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.steps, Some(4));
        let m = p.module.unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (1, 2));
    }

    #[test]
    fn empty_relations_are_allowed() {
        let p = parse_problem("vertices: u, w\narrows:\n  x: u -> w\nrelations:\n").unwrap();
        assert!(p.relations.is_empty());
        assert!(p.module.is_none());
        assert_eq!(p.algebra.field(), Field::Rationals);
    }

    #[test]
    fn errors_are_located() {
        let base = "vertices: v1, v2, v3, v4\narrows:\n  a: v1 -> v2\n  b: v2 -> v4\nfield: Q\n";
        let (l, c, m) = location(parse_problem(&format!("{base}module: targets(v1) sources(v4) matrix([a*a])\n")).unwrap_err());
        assert_eq!(l, 5 + 1);
        assert!(m.contains("non-composable"), "{m}");
        assert_eq!(c, "module: targets(v1) sources(v4) matrix([a*".len() + 1);

        let (l, _, m) = location(parse_problem(&format!("{base}module: targets(v1) sources(v2) matrix([a, b])\n")).unwrap_err());
        assert_eq!(l, 6);
        assert!(m.contains("entries"), "{m}");

        let (l, c, m) = location(parse_problem(&format!("{base}module: targets(v1) sources(v4) matrix([a])\n")).unwrap_err());
        assert_eq!((l, c), (6, "module: targets(v1) sources(v4) matrix([".len() + 1));
        assert!(m.contains("does not lie"), "{m}");

        let (l, c, m) = location(parse_problem("vertices: v1\narrows:\n  a: v1 -> v9\n").unwrap_err());
        assert_eq!((l, c), (3, 12));
        assert!(m.contains("undeclared vertex `v9`"));

        let (l, c, _) = location(parse_problem(&format!("{base}relations:\n  a*b + q\n")).unwrap_err());
        assert_eq!((l, c), (7, 9));

        let (l, _, m) = location(parse_problem("vertices: v\nbogus: 1\n").unwrap_err());
        assert_eq!(l, 2);
        assert!(m.contains("unknown block"));
        assert!(parse_problem("vertices: v\nfield: GF(6)\n").is_err());
        assert!(parse_problem("vertices: v\nsteps: -1\n").is_err());
    }

    #[test]
    fn prime_fields_and_multirow_matrices() {
        let text = "vertices: u, w\narrows:\n  x: u -> w\n  y: u -> w\nfield: GF(5)\n\
                    module: targets(u, w)\n  sources(w, w)\n  matrix([x, 3*y], [w, 0])\nverify: off\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.algebra.field(), Field::Prime(5));
        assert_eq!(p.verify, Some(false));
        let m = p.module.unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (2, 2));
        assert!(m.matrix.get(1, 1).is_zero());
    }
}
