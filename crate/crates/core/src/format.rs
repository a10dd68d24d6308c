//! Line-based text formats for presentations, modules and linear complexes.

use std::path::Path as FsPath;

use std::collections::BTreeMap;

use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linear::LinearComplex;
use crate::matrix::Matrix;
use crate::module::{Alg, GradedModule, ModuleHom};
use crate::quiver::{format_combination, Presentation, Quiver, Relation, DEFAULT_BOUND};

fn line_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Line { line, msg: msg.into() }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

/// Parses the presentation format. `default_field` applies when no `field` line is present.
pub fn parse_presentation(text: &str, default_field: Field) -> Result<Presentation> {
    let mut field = default_field;
    let mut bound = DEFAULT_BOUND;
    let mut q = Quiver::new();
    let mut pending: Vec<(usize, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match cmd {
            "field" => field = rest.parse().map_err(|e: Error| line_err(no, e.to_string()))?,
            "bound" => bound = rest.parse().map_err(|_| line_err(no, format!("bad bound `{rest}`")))?,
            "vertex" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(line_err(no, "expected `vertex <label>`"));
                }
                q.add_vertex(rest).map_err(|e| line_err(no, e.to_string()))?;
            }
            "arrow" => {
                let t: Vec<&str> = rest.split_whitespace().collect();
                let [name, s, tg] = t.as_slice() else {
                    return Err(line_err(no, "expected `arrow <name> <source> <target>`"));
                };
                let s = q.vertex(s).map_err(|e| line_err(no, e.to_string()))?;
                let tg = q.vertex(tg).map_err(|e| line_err(no, e.to_string()))?;
                q.add_arrow(name, s, tg).map_err(|e| line_err(no, e.to_string()))?;
            }
            "relation" => pending.push((no, rest.to_string())),
            _ => return Err(line_err(no, format!("unknown directive `{cmd}`"))),
        }
    }
    let mut relations = Vec::new();
    for (no, text) in pending {
        relations.push(parse_combination(&q, field, &text).map_err(|e| line_err(no, e.to_string()))?);
    }
    Presentation::new(field, q, relations, bound)
}

pub fn read_presentation(path: &FsPath, default_field: Field) -> Result<Presentation> {
    parse_presentation(&std::fs::read_to_string(path)?, default_field)
}

/// Splits `a - b + c` into signed terms.
fn signed_terms(text: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            }
            cur.clear();
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

fn is_number(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c.is_whitespace())
}

/// Parses a path written in composition order (`g∘f`, `g o f`, or `gof` when unambiguous)
/// into application order.
fn parse_path(q: &Quiver, s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let parts: Vec<String> = if s.contains('∘') {
        s.split('∘').map(|p| p.trim().to_string()).collect()
    } else if s.split_whitespace().count() > 1 {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let mut parts = Vec::new();
        for (i, t) in toks.iter().enumerate() {
            if i % 2 == 1 {
                if *t != "o" {
                    return Err(Error::Parse(format!("expected `o` between arrows in `{s}`")));
                }
            } else {
                parts.push(t.to_string());
            }
        }
        parts
    } else if q.arrow(s).is_ok() {
        vec![s.to_string()]
    } else {
        let parts: Vec<String> = s.split('o').map(str::to_string).collect();
        if parts.iter().all(|p| q.arrow(p).is_ok()) {
            parts
        } else {
            return Err(Error::UnknownArrow(s.to_string()));
        }
    };
    let mut arrows = parts.iter().map(|p| q.arrow(p)).collect::<Result<Vec<_>>>()?;
    arrows.reverse();
    Ok(arrows)
}

/// Parses `c1*p1 + c2*p2 ...` into a relation; paths must share endpoints and length.
pub fn parse_combination(q: &Quiver, field: Field, text: &str) -> Result<Relation> {
    let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
    for (neg, term) in signed_terms(text) {
        let (coeff, path) = match term.find('*') {
            Some(i) if is_number(&term[..i]) => (field.parse(&term[..i])?, term[i + 1..].to_string()),
            _ => (field.one(), term.clone()),
        };
        let coeff = if neg { -coeff } else { coeff };
        terms.push((coeff, parse_path(q, &path)?));
    }
    let Some((_, first)) = terms.first() else {
        return Err(Error::Relation("empty relation".into()));
    };
    let degree = first.len();
    if degree == 0 {
        return Err(Error::Relation("empty path".into()));
    }
    let source = q.arrows()[first[0]].source;
    let target = q.arrows()[*first.last().unwrap()].target;
    Ok(Relation { source, target, degree, terms })
}

pub fn write_presentation(p: &Presentation) -> String {
    let q = p.quiver();
    let mut s = format!("field {}\nbound {}\n", p.field(), p.bound());
    for v in q.vertices() {
        s.push_str(&format!("vertex {v}\n"));
    }
    for a in q.arrows() {
        s.push_str(&format!("arrow {} {} {}\n", a.name, q.label(a.source), q.label(a.target)));
    }
    for r in p.relations() {
        s.push_str(&format!("relation {}\n", format_combination(q, r)));
    }
    s
}

/// Which algebra of a presentation file an object lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    Algebra,
    Dual,
}

/// First line of a module, linear complex or complex file: `<kind> over|over-dual <presentation>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub kind: String,
    pub over: Over,
    pub source: String,
}

impl Header {
    pub fn line(&self) -> String {
        let o = match self.over {
            Over::Algebra => "over",
            Over::Dual => "over-dual",
        };
        format!("{} {} {}", self.kind, o, self.source)
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty())
}

pub fn read_header(text: &str) -> Result<Header> {
    let (no, line) = lines(text).next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let t: Vec<&str> = line.splitn(3, char::is_whitespace).collect();
    let [kind, over, source] = t.as_slice() else {
        return Err(line_err(no, "expected `<kind> over <presentation file>`"));
    };
    let over = match *over {
        "over" => Over::Algebra,
        "over-dual" => Over::Dual,
        o => return Err(line_err(no, format!("expected `over` or `over-dual`, found `{o}`"))),
    };
    Ok(Header { kind: kind.to_string(), over, source: source.trim().to_string() })
}

fn parse_int<T: std::str::FromStr>(no: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| line_err(no, format!("bad {what} `{s}`")))
}

/// Rows separated by `;`, entries by whitespace.
fn parse_rows(no: usize, field: Field, text: &str, rows: usize, cols: usize) -> Result<Matrix> {
    let mut m = Matrix::zeros(field, rows, cols);
    let parts: Vec<&str> = if text.trim().is_empty() { Vec::new() } else { text.split(';').collect() };
    if parts.len() != rows && !(rows == 0 || cols == 0) {
        return Err(line_err(no, format!("expected {rows} rows, found {}", parts.len())));
    }
    for (i, r) in parts.iter().enumerate().take(rows) {
        let entries: Vec<&str> = r.split_whitespace().collect();
        if entries.len() != cols {
            return Err(line_err(no, format!("expected {cols} entries in row {}, found {}", i + 1, entries.len())));
        }
        for (j, e) in entries.iter().enumerate() {
            m.set(i, j, field.parse(e).map_err(|e| line_err(no, e.to_string()))?);
        }
    }
    Ok(m)
}

fn write_rows(m: &Matrix) -> String {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
}

#[derive(Default)]
struct ModuleLines {
    dims: BTreeMap<(usize, i64), usize>,
    maps: Vec<(usize, usize, i64, String)>,
}

impl ModuleLines {
    fn take(&mut self, alg: &Alg, no: usize, cmd: &str, rest: &str) -> Result<bool> {
        let q = alg.quiver();
        match cmd {
            "dim" => {
                let t: Vec<&str> = rest.split_whitespace().collect();
                let [v, d, n] = t.as_slice() else {
                    return Err(line_err(no, "expected `dim <vertex> <degree> <n>`"));
                };
                let v = q.vertex(v).map_err(|e| line_err(no, e.to_string()))?;
                self.dims.insert((v, parse_int(no, d, "degree")?), parse_int(no, n, "dimension")?);
            }
            "map" => {
                let mut it = rest.splitn(3, char::is_whitespace);
                let (Some(a), Some(d)) = (it.next(), it.next()) else {
                    return Err(line_err(no, "expected `map <arrow> <degree> <rows>`"));
                };
                let a = q.arrow(a).map_err(|e| line_err(no, e.to_string()))?;
                self.maps.push((no, a, parse_int(no, d, "degree")?, it.next().unwrap_or("").to_string()));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self, alg: &Alg) -> Result<GradedModule> {
        let q = alg.quiver();
        let get = |v: usize, d: i64| self.dims.get(&(v, d)).copied().unwrap_or(0);
        let mut actions = BTreeMap::new();
        for (no, a, d, text) in &self.maps {
            let arrow = &q.arrows()[*a];
            let m = parse_rows(*no, alg.field(), text, get(arrow.target, d + 1), get(arrow.source, *d))?;
            actions.insert((*a, *d), m);
        }
        GradedModule::new(alg.clone(), self.dims, actions)
    }
}

fn module_body(m: &GradedModule) -> String {
    let q = m.algebra().quiver();
    let mut s = String::new();
    for (&(v, d), n) in m.dims() {
        s.push_str(&format!("dim {} {d} {n}\n", q.label(v)));
    }
    for (&(a, d), mat) in m.actions() {
        if mat.rows() > 0 && mat.cols() > 0 && !mat.is_zero() {
            s.push_str(&format!("map {} {d} {}\n", q.arrows()[a].name, write_rows(mat)));
        }
    }
    s
}

/// Parses a module file over `alg`; the header is read separately with [`read_header`].
pub fn parse_module(text: &str, alg: &Alg) -> Result<GradedModule> {
    let mut acc = ModuleLines::default();
    for (no, line) in lines(text).skip(1) {
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if !acc.take(alg, no, cmd, rest.trim())? {
            return Err(line_err(no, format!("unknown directive `{cmd}`")));
        }
    }
    acc.finish(alg)
}

pub fn write_module(m: &GradedModule, over: Over, source: &str) -> String {
    let h = Header { kind: "module".into(), over, source: source.into() };
    format!("{}\n{}", h.line(), module_body(m))
}

/// Linear complexes: `summand <position> <vertex> <multiplicity>` and
/// `block <position> <arrow> <rows>`, where the block of `a: μ → λ` maps the
/// `μ` part in position `i+1` to the `λ` part in position `i`.
pub fn parse_lc(text: &str, alg: &Alg) -> Result<LinearComplex> {
    let q = alg.quiver();
    let mut mult = BTreeMap::new();
    let mut pending = Vec::new();
    for (no, line) in lines(text).skip(1) {
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match cmd {
            "summand" => {
                let t: Vec<&str> = rest.split_whitespace().collect();
                let [p, v, n] = t.as_slice() else {
                    return Err(line_err(no, "expected `summand <position> <vertex> <multiplicity>`"));
                };
                let v = q.vertex(v).map_err(|e| line_err(no, e.to_string()))?;
                mult.insert((parse_int::<i64>(no, p, "position")?, v), parse_int::<usize>(no, n, "multiplicity")?);
            }
            "block" => {
                let mut it = rest.trim().splitn(3, char::is_whitespace);
                let (Some(p), Some(a)) = (it.next(), it.next()) else {
                    return Err(line_err(no, "expected `block <position> <arrow> <rows>`"));
                };
                let a = q.arrow(a).map_err(|e| line_err(no, e.to_string()))?;
                pending.push((no, parse_int::<i64>(no, p, "position")?, a, it.next().unwrap_or("").to_string()));
            }
            _ => return Err(line_err(no, format!("unknown directive `{cmd}`"))),
        }
    }
    let get = |p: i64, v: usize| mult.get(&(p, v)).copied().unwrap_or(0);
    let mut blocks = BTreeMap::new();
    for (no, p, a, text) in pending {
        let arrow = &q.arrows()[a];
        blocks.insert((p, a), parse_rows(no, alg.field(), &text, get(p + 1, arrow.source), get(p, arrow.target))?);
    }
    LinearComplex::new(alg.clone(), mult, blocks)
}

pub fn write_lc(lc: &LinearComplex, source: &str) -> String {
    let q = lc.algebra().quiver();
    let h = Header { kind: "lc".into(), over: Over::Algebra, source: source.into() };
    let mut s = format!("{}\n", h.line());
    for (&(p, v), n) in lc.multiplicities() {
        if *n > 0 {
            s.push_str(&format!("summand {p} {} {n}\n", q.label(v)));
        }
    }
    for (&(p, a), m) in lc.blocks() {
        if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
            s.push_str(&format!("block {p} {} {}\n", q.arrows()[a].name, write_rows(m)));
        }
    }
    s
}

/// Complexes: `component <position>` opens a component described by `dim` and `map` lines;
/// `diff <position> <vertex> <degree> <rows>` gives a block of `d^p`.
pub fn parse_complex(text: &str, alg: &Alg) -> Result<GradedComplex> {
    let q = alg.quiver();
    let mut comps: BTreeMap<i64, ModuleLines> = BTreeMap::new();
    let mut current: Option<i64> = None;
    let mut pending = Vec::new();
    for (no, line) in lines(text).skip(1) {
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match cmd {
            "component" => {
                let p = parse_int(no, rest, "position")?;
                comps.entry(p).or_default();
                current = Some(p);
            }
            "diff" => {
                let mut it = rest.splitn(4, char::is_whitespace);
                let (Some(p), Some(v), Some(d)) = (it.next(), it.next(), it.next()) else {
                    return Err(line_err(no, "expected `diff <position> <vertex> <degree> <rows>`"));
                };
                let v = q.vertex(v).map_err(|e| line_err(no, e.to_string()))?;
                pending.push((no, parse_int::<i64>(no, p, "position")?, v, parse_int::<i64>(no, d, "degree")?, it.next().unwrap_or("").to_string()));
            }
            _ => {
                let Some(p) = current else {
                    return Err(line_err(no, format!("`{cmd}` outside a component")));
                };
                if !comps.get_mut(&p).expect("open component").take(alg, no, cmd, rest)? {
                    return Err(line_err(no, format!("unknown directive `{cmd}`")));
                }
            }
        }
    }
    let mut components = BTreeMap::new();
    for (p, acc) in comps {
        components.insert(p, acc.finish(alg)?);
    }
    let zero = GradedModule::zero(alg.clone());
    let mut diffs: BTreeMap<i64, ModuleHom> = BTreeMap::new();
    for (no, p, v, d, text) in pending {
        let src = components.get(&p).unwrap_or(&zero);
        let tgt = components.get(&(p + 1)).unwrap_or(&zero);
        let m = parse_rows(no, alg.field(), &text, tgt.dim(v, d), src.dim(v, d))?;
        diffs.entry(p).or_insert_with(|| ModuleHom::zero(0)).set(v, d, m);
    }
    GradedComplex::new(alg.clone(), components, diffs)
}

pub fn write_complex(x: &GradedComplex, over: Over, source: &str) -> String {
    let q = x.algebra().quiver();
    let h = Header { kind: "complex".into(), over, source: source.into() };
    let mut s = format!("{}\n", h.line());
    for (p, m) in x.components() {
        s.push_str(&format!("component {p}\n"));
        s.push_str(&module_body(m));
    }
    for p in x.positions() {
        for (&(v, d), m) in x.diff(p).blocks() {
            if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                s.push_str(&format!("diff {p} {} {d} {}\n", q.label(v), write_rows(m)));
            }
        }
    }
    s
}
