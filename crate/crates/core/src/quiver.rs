//! Quivers, paths and presentations by homogeneous relations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path stored in application order: `arrows[0]` is applied first.
///
/// The path `g∘f` (apply `f`, then `g`) is stored as `[f, g]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Path) -> Path {
        assert_eq!(first.target, self.source, "paths do not compose");
        let mut arrows = first.arrows.clone();
        arrows.extend(&self.arrows);
        Path { source: first.source, target: self.target, arrows }
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.vertices.iter().any(|v| v == label) {
            return Err(Error::Parse(format!("duplicate vertex `{label}`")));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize> {
        if !valid_arrow_name(name) {
            return Err(Error::Parse(format!("invalid arrow name `{name}`")));
        }
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::Parse(format!("duplicate arrow `{name}`")));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("#{}", source.max(target))));
        }
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    /// Arrows `source → target`, in declaration order.
    pub fn arrows_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].source == source && self.arrows[i].target == target).collect()
    }

    /// All paths of length `d` from `source` to `target`, lexicographic in application order.
    pub fn paths(&self, d: usize, source: usize, target: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_paths(d, source, target, source, &mut stack, &mut out);
        out
    }

    fn extend_paths(&self, d: usize, source: usize, target: usize, at: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        if stack.len() == d {
            if at == target {
                out.push(Path { source, target, arrows: stack.clone() });
            }
            return;
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source == at {
                stack.push(i);
                self.extend_paths(d, source, target, a.target, stack, out);
                stack.pop();
            }
        }
    }

    /// Same vertices, every arrow reversed, names kept.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source }).collect(),
        }
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertices[p.source]);
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("∘")
    }
}

pub(crate) fn valid_arrow_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '*')
}

/// A homogeneous linear combination of paths sharing source, target and length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn paths(&self) -> impl Iterator<Item = (&Scalar, Path)> + '_ {
        self.terms.iter().map(|(c, a)| (c, Path { source: self.source, target: self.target, arrows: a.clone() }))
    }
}

/// A quiver together with homogeneous relations of degree at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
}

pub const DEFAULT_BOUND: usize = 8;

impl Presentation {
    /// Validates the relations and normalizes them by row reduction per (source, target, degree).
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>, bound: usize) -> Result<Presentation> {
        if bound < 2 {
            return Err(Error::Bound(bound));
        }
        for r in &relations {
            check_relation(&quiver, r)?;
            for (c, _) in &r.terms {
                if c.field() != field {
                    return Err(Error::FieldMismatch(c.field(), field));
                }
            }
        }
        let relations = normalize(field, &quiver, relations);
        Ok(Presentation { field, quiver, relations, bound })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_bound(&self, bound: usize) -> Result<Presentation> {
        if bound < 2 {
            return Err(Error::Bound(bound));
        }
        Ok(Presentation { bound, ..self.clone() })
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree == 2)
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    /// Keeps only the degree-two relations.
    pub fn quadratic_part(&self) -> Presentation {
        Presentation {
            relations: self.relations.iter().filter(|r| r.degree == 2).cloned().collect(),
            ..self.clone()
        }
    }

    /// Reversed arrows and reversed relation paths.
    pub fn opposite(&self) -> Presentation {
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                source: r.target,
                target: r.source,
                degree: r.degree,
                terms: r
                    .terms
                    .iter()
                    .map(|(c, a)| {
                        let mut a = a.clone();
                        a.reverse();
                        (c.clone(), a)
                    })
                    .collect(),
            })
            .collect();
        Presentation::new(self.field, self.quiver.opposite(), relations, self.bound).expect("opposite of a valid presentation")
    }

    /// Relation space in degree `d` from `source` to `target`, as rows over
    /// the coordinates `quiver.paths(d, source, target)`.
    pub fn relation_matrix(&self, d: usize, source: usize, target: usize) -> Matrix {
        let paths = self.quiver.paths(d, source, target);
        let index: BTreeMap<&Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (&p.arrows, i)).collect();
        let rows: Vec<Vec<Scalar>> = self
            .relations
            .iter()
            .filter(|r| r.degree == d && r.source == source && r.target == target)
            .map(|r| {
                let mut row = vec![self.field.zero(); paths.len()];
                for (c, a) in &r.terms {
                    let i = index[a];
                    row[i] = &row[i] + c;
                }
                row
            })
            .collect();
        if rows.is_empty() {
            Matrix::zeros(self.field, 0, paths.len())
        } else {
            Matrix::from_rows(self.field, rows)
        }
    }

    /// Whether both presentations have the same quiver and the same relation spaces.
    pub fn same_algebra(&self, other: &Presentation) -> bool {
        if self.field != other.field || self.quiver != other.quiver {
            return false;
        }
        self.relations == other.relations
    }

    pub fn relation_name(&self, r: &Relation) -> String {
        format_combination(&self.quiver, r)
    }
}

fn check_relation(q: &Quiver, r: &Relation) -> Result<()> {
    if r.degree < 2 {
        return Err(Error::Relation(format!("degree {} relation; relations start in degree two", r.degree)));
    }
    if r.terms.is_empty() {
        return Err(Error::Relation("empty relation".into()));
    }
    for (_, arrows) in &r.terms {
        if arrows.len() != r.degree {
            return Err(Error::Relation("terms of different lengths".into()));
        }
        let mut at = r.source;
        for &a in arrows {
            let arrow = q.arrows().get(a).ok_or_else(|| Error::UnknownArrow(format!("#{a}")))?;
            if arrow.source != at {
                return Err(Error::Relation(format!("`{}` does not compose at this point of the path", arrow.name)));
            }
            at = arrow.target;
        }
        if at != r.target {
            return Err(Error::Relation("terms with different endpoints".into()));
        }
    }
    Ok(())
}

fn normalize(field: Field, q: &Quiver, relations: Vec<Relation>) -> Vec<Relation> {
    let mut groups: BTreeMap<(usize, usize, usize), Vec<Relation>> = BTreeMap::new();
    for r in relations {
        groups.entry((r.degree, r.source, r.target)).or_default().push(r);
    }
    let mut out = Vec::new();
    for ((d, s, t), rels) in groups {
        let paths = q.paths(d, s, t);
        let index: BTreeMap<&Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (&p.arrows, i)).collect();
        let rows: Vec<Vec<Scalar>> = rels
            .iter()
            .map(|r| {
                let mut row = vec![field.zero(); paths.len()];
                for (c, a) in &r.terms {
                    let i = index[a];
                    row[i] = &row[i] + c;
                }
                row
            })
            .collect();
        let basis = Matrix::from_rows(field, rows).row_basis();
        for i in 0..basis.rows() {
            let terms = (0..paths.len())
                .filter(|&j| !basis.get(i, j).is_zero())
                .map(|j| (basis.get(i, j).clone(), paths[j].arrows.clone()))
                .collect();
            out.push(Relation { source: s, target: t, degree: d, terms });
        }
    }
    out
}

/// Renders `c1*p1 + c2*p2 - ...` with paths written in composition order.
pub fn format_combination(q: &Quiver, r: &Relation) -> String {
    let mut s = String::new();
    for (i, (c, a)) in r.terms.iter().enumerate() {
        let p = Path { source: r.source, target: r.target, arrows: a.clone() };
        let name = q.path_name(&p);
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&format!("{mag}*{name}"));
    }
    s
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::write_presentation(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle() -> Quiver {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("f", 0, 1).unwrap();
        q.add_arrow("g", 1, 0).unwrap();
        q
    }

    #[test]
    fn path_enumeration() {
        let q = cycle();
        assert_eq!(q.paths(2, 0, 0).len(), 1);
        assert_eq!(q.path_name(&q.paths(2, 0, 0)[0]), "g∘f");
        assert_eq!(q.paths(3, 0, 1).len(), 1);
        assert!(q.paths(2, 0, 1).is_empty());
        assert_eq!(q.paths(0, 1, 1), vec![Path::trivial(1)]);
    }

    #[test]
    fn relations_normalize() {
        let q = cycle();
        let f = Field::Rational;
        let r = Relation { source: 0, target: 0, degree: 2, terms: vec![(f.int(3), vec![0, 1])] };
        let p = Presentation::new(f, q.clone(), vec![r.clone(), r], 4).unwrap();
        assert_eq!(p.relations().len(), 1);
        assert!(p.relations()[0].terms[0].0.is_one());
    }

    #[test]
    fn bad_relations_rejected() {
        let q = cycle();
        let f = Field::Rational;
        let r = Relation { source: 0, target: 1, degree: 2, terms: vec![(f.one(), vec![0, 1])] };
        assert!(Presentation::new(f, q.clone(), vec![r], 4).is_err());
        let r = Relation { source: 0, target: 1, degree: 1, terms: vec![(f.one(), vec![0])] };
        assert!(Presentation::new(f, q, vec![r], 4).is_err());
    }

    #[test]
    fn opposite_reverses() {
        let q = cycle();
        let f = Field::Rational;
        let r = Relation { source: 0, target: 0, degree: 2, terms: vec![(f.one(), vec![0, 1])] };
        let p = Presentation::new(f, q, vec![r], 4).unwrap();
        let o = p.opposite();
        assert_eq!(o.quiver().arrows()[0].source, 1);
        assert_eq!(o.relations()[0].terms[0].1, vec![1, 0]);
        assert!(o.opposite().same_algebra(&p));
    }
}
