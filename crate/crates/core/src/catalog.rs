//! Presentations of the standard small examples.

use crate::field::Field;
use crate::quiver::{Presentation, Quiver, Relation};

/// Two vertices `1, 2`, arrows `f: 1→2`, `g: 2→1`, relation `g∘f`.
pub fn sl2(bound: usize) -> Presentation {
    sl2_over(Field::Rational, bound)
}

pub fn sl2_over(field: Field, bound: usize) -> Presentation {
    let mut q = Quiver::new();
    q.add_vertex("1").unwrap();
    q.add_vertex("2").unwrap();
    let f = q.add_arrow("f", 0, 1).unwrap();
    let g = q.add_arrow("g", 1, 0).unwrap();
    let r = Relation { source: 0, target: 0, degree: 2, terms: vec![(field.one(), vec![f, g])] };
    Presentation::new(field, q, vec![r], bound).unwrap()
}

/// `n` vertices and no arrows.
pub fn semisimple(n: usize, bound: usize) -> Presentation {
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(&i.to_string()).unwrap();
    }
    Presentation::new(Field::Rational, q, Vec::new(), bound).unwrap()
}

/// Vertices `1..=n` with arrows `a_i: i+1 → i` and no relations.
pub fn a_infinity(n: usize, bound: usize) -> Presentation {
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(&i.to_string()).unwrap();
    }
    for i in 1..n {
        q.add_arrow(&format!("a{i}"), i, i - 1).unwrap();
    }
    Presentation::new(Field::Rational, q, Vec::new(), bound).unwrap()
}

/// One vertex, a loop `x` and the monomial relation `xⁿ`.
pub fn truncated_polynomial(n: usize, bound: usize) -> Presentation {
    let mut q = Quiver::new();
    q.add_vertex("1").unwrap();
    let x = q.add_arrow("x", 0, 0).unwrap();
    let f = Field::Rational;
    let r = Relation { source: 0, target: 0, degree: n, terms: vec![(f.one(), vec![x; n])] };
    Presentation::new(f, q, vec![r], bound).unwrap()
}

/// One vertex and a free loop `x`: the polynomial ring, truncated at the bound.
pub fn polynomial(bound: usize) -> Presentation {
    let mut q = Quiver::new();
    q.add_vertex("1").unwrap();
    q.add_arrow("x", 0, 0).unwrap();
    Presentation::new(Field::Rational, q, Vec::new(), bound).unwrap()
}
