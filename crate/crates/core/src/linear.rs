//! Linear complexes of projectives and their correspondence with graded modules
//! over the quadratic dual.
//!
//! Position `i` of a linear complex is a sum of copies of `P(λ)⟨i⟩`. The differential
//! from the `λ` copies at `i` to the `μ` copies at `i+1` has entries in `C_1(μ, λ)`,
//! stored as one scalar matrix per arrow `a: μ → λ`. The dual arrow `a*: λ → μ` of `C^!`
//! acts by the same matrix under `ε`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Element;
use crate::dual::quadratic_dual;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{Alg, GradedModule};
use crate::projective::{minimal_injective_coresolution, resolve_simple, Entries, InjComplex, ProjComplex, Summand};

#[derive(Clone, Debug)]
pub struct LinearComplex {
    algebra: Alg,
    mult: BTreeMap<(i64, usize), usize>,
    blocks: BTreeMap<(i64, usize), Matrix>,
}

/// Index of each arrow in the basis of `C_1(source, target)`.
fn arrow_coordinates(a: &Alg) -> Vec<usize> {
    (0..a.quiver().num_arrows())
        .map(|i| {
            let e = a.arrow_element(i);
            e.coords.iter().position(|c| !c.is_zero()).expect("arrows are nonzero in degree one")
        })
        .collect()
}

/// Whether `dual` carries the quadratic dual presentation of `algebra`.
pub fn is_dual_pair(algebra: &Alg, dual: &Alg) -> Result<bool> {
    let p = algebra.require_presentation()?;
    let q = dual.require_presentation()?;
    Ok(quadratic_dual(p)?.0.same_algebra(q))
}

fn require_dual_pair(algebra: &Alg, dual: &Alg) -> Result<()> {
    if is_dual_pair(algebra, dual)? {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch("module is not over the quadratic dual".into()))
    }
}

impl LinearComplex {
    pub fn zero(algebra: Alg) -> LinearComplex {
        LinearComplex { algebra, mult: BTreeMap::new(), blocks: BTreeMap::new() }
    }

    /// Builds a linear complex from multiplicities `(position, vertex) ↦ m` and arrow blocks,
    /// checking shapes and `d∘d = 0`.
    pub fn new(algebra: Alg, mult: BTreeMap<(i64, usize), usize>, blocks: BTreeMap<(i64, usize), Matrix>) -> Result<LinearComplex> {
        let lc = LinearComplex::unchecked(algebra, mult, blocks);
        for (&(i, a), m) in &lc.blocks {
            let arrow = lc.algebra.quiver().arrows().get(a).ok_or_else(|| Error::UnknownArrow(format!("#{a}")))?;
            if m.rows() != lc.multiplicity(i + 1, arrow.source) || m.cols() != lc.multiplicity(i, arrow.target) {
                return Err(Error::Dimension(format!("block for `{}` at position {i}", arrow.name)));
            }
        }
        if !lc.to_projective().squares_to_zero() {
            return Err(Error::NotComplex("d∘d ≠ 0 in C_2".into()));
        }
        Ok(lc)
    }

    fn unchecked(algebra: Alg, mult: BTreeMap<(i64, usize), usize>, blocks: BTreeMap<(i64, usize), Matrix>) -> LinearComplex {
        let mult = mult.into_iter().filter(|&(_, n)| n > 0).collect();
        let blocks = blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        LinearComplex { algebra, mult, blocks }
    }

    pub fn algebra(&self) -> &Alg {
        &self.algebra
    }

    pub fn multiplicities(&self) -> &BTreeMap<(i64, usize), usize> {
        &self.mult
    }

    pub fn multiplicity(&self, position: i64, v: usize) -> usize {
        self.mult.get(&(position, v)).copied().unwrap_or(0)
    }

    pub fn blocks(&self) -> &BTreeMap<(i64, usize), Matrix> {
        &self.blocks
    }

    /// Matrix of arrow `a` from position `i` to `i + 1` (zero if absent).
    pub fn block(&self, i: i64, a: usize) -> Matrix {
        let arrow = &self.algebra.quiver().arrows()[a];
        self.blocks
            .get(&(i, a))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.algebra.field(), self.multiplicity(i + 1, arrow.source), self.multiplicity(i, arrow.target)))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn positions(&self) -> Vec<i64> {
        let mut p: Vec<i64> = self.mult.keys().map(|k| k.0).collect();
        p.dedup();
        p
    }

    /// The simple object: one copy of `P(v)⟨i⟩` at position `i`.
    pub fn simple(algebra: Alg, v: usize, i: i64) -> LinearComplex {
        let mut mult = BTreeMap::new();
        mult.insert((i, v), 1);
        LinearComplex { algebra, mult, blocks: BTreeMap::new() }
    }

    /// Summands at position `i`, grouped by vertex.
    fn summands(&self, i: i64) -> Vec<Summand> {
        self.mult.range((i, 0)..=(i, usize::MAX)).flat_map(|(&(_, v), &n)| std::iter::repeat_n(Summand { vertex: v, shift: i }, n)).collect()
    }

    fn offset(&self, i: i64, v: usize) -> usize {
        self.mult.range((i, 0)..(i, v)).map(|(_, &n)| n).sum()
    }

    /// The complex of projectives described by this data.
    pub fn to_projective(&self) -> ProjComplex {
        let a = &self.algebra;
        let mut terms = BTreeMap::new();
        for p in self.positions() {
            terms.insert(p, self.summands(p));
        }
        let mut diffs: BTreeMap<i64, Entries> = BTreeMap::new();
        for (&(i, ai), m) in &self.blocks {
            let arrow = &a.quiver().arrows()[ai];
            let (r0, c0) = (self.offset(i + 1, arrow.source), self.offset(i, arrow.target));
            let el = a.arrow_element(ai);
            let ents = diffs.entry(i).or_default();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let x = m.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    let term = el.scale(x);
                    let slot = ents.entry((r0 + r, c0 + c)).or_insert_with(|| a.zero(1, arrow.source, arrow.target));
                    *slot = slot.add(&term);
                }
            }
        }
        ProjComplex::unchecked(a.clone(), terms, diffs)
    }

    /// `X⟨i⟩[-i]`: every summand moves from position `j` to `j + i`, with the sign `(-1)^i`.
    pub fn shift(&self, i: i64) -> LinearComplex {
        let sign = if i.rem_euclid(2) == 1 { -self.algebra.field().one() } else { self.algebra.field().one() };
        LinearComplex {
            algebra: self.algebra.clone(),
            mult: self.mult.iter().map(|(&(p, v), &n)| ((p + i, v), n)).collect(),
            blocks: self.blocks.iter().map(|(&(p, a), m)| ((p + i, a), m.scale(&sign))).collect(),
        }
    }

    /// Entrywise equality.
    pub fn same_data(&self, other: &LinearComplex) -> bool {
        if self.mult != other.mult {
            return false;
        }
        let keys: std::collections::BTreeSet<_> = self.blocks.keys().chain(other.blocks.keys()).collect();
        keys.into_iter().all(|&(i, a)| self.block(i, a) == other.block(i, a))
    }
}

impl fmt::Display for LinearComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_projective())
    }
}

/// `S₋₁Q₀`: keeps the summands `P(λ)⟨i⟩` in position `i` and the induced differential.
pub fn linear_part(pc: &ProjComplex) -> LinearComplex {
    let a = pc.algebra().clone();
    let coords = arrow_coordinates(&a);
    let mut mult: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    // for each position: original index ↦ (vertex, index within the vertex block)
    let mut local: BTreeMap<i64, BTreeMap<usize, (usize, usize)>> = BTreeMap::new();
    for (&p, s) in pc.terms() {
        let loc = local.entry(p).or_default();
        for (idx, x) in s.iter().enumerate() {
            if x.shift == p {
                let n = mult.entry((p, x.vertex)).or_insert(0);
                loc.insert(idx, (x.vertex, *n));
                *n += 1;
            }
        }
    }
    let lc0 = LinearComplex::unchecked(a.clone(), mult.clone(), BTreeMap::new());
    let mut blocks: BTreeMap<(i64, usize), Matrix> = BTreeMap::new();
    for (&p, _) in pc.terms() {
        let (Some(src), Some(tgt)) = (local.get(&p), local.get(&(p + 1))) else { continue };
        for ((r, c), el) in pc.entries(p) {
            let (Some(&(mu, k)), Some(&(lam, j))) = (tgt.get(&r), src.get(&c)) else { continue };
            debug_assert_eq!(el.degree, 1);
            for ai in a.quiver().arrows_between(mu, lam) {
                let x = &el.coords[coords[ai]];
                if x.is_zero() {
                    continue;
                }
                let m = blocks.entry((p, ai)).or_insert_with(|| lc0.block(p, ai));
                m.set(k, j, x.clone());
            }
        }
    }
    LinearComplex::unchecked(a, mult, blocks)
}

/// `ε`: the graded `C^!`-module with `X(λ)_i` the multiplicity space of `P(λ)⟨i⟩`
/// and `a*` acting by the block of `a`.
pub fn epsilon(lc: &LinearComplex, dual: &Alg) -> Result<GradedModule> {
    require_dual_pair(&lc.algebra, dual)?;
    if !lc.to_projective().squares_to_zero() {
        return Err(Error::NotComplex("d∘d ≠ 0 in C_2".into()));
    }
    let dims = lc.mult.iter().map(|(&(i, v), &n)| ((v, i), n)).collect();
    let actions = lc.blocks.iter().map(|(&(i, a), m)| ((a, i), m.clone())).collect();
    GradedModule::new(dual.clone(), dims, actions)
}

/// `ε⁻¹`: `m(λ, i) = dim X(λ)_i`, with the block of `a` given by the action of `a*`.
pub fn epsilon_inverse(x: &GradedModule, algebra: &Alg) -> Result<LinearComplex> {
    require_dual_pair(algebra, x.algebra())?;
    let mult = x.dims().iter().map(|(&(v, i), &n)| ((i, v), n)).collect();
    let blocks = x.actions().iter().map(|(&(a, i), m)| ((i, a), m.clone())).collect();
    Ok(LinearComplex::unchecked(algebra.clone(), mult, blocks))
}

/// The injective hull of the simple object at `λ`: linear part of the minimal resolution of `L(λ)`.
pub fn lc_injective(algebra: &Alg, v: usize, positions: usize) -> LinearComplex {
    linear_part(&resolve_simple(algebra, v, positions).complex)
}

/// The projective cover of the simple object at `λ`: the minimal injective coresolution
/// of `L(λ)`, read back through the Nakayama correspondence, then its linear part.
pub fn lc_projective(algebra: &Alg, opposite: &Alg, v: usize, positions: usize) -> LinearComplex {
    let inj = minimal_injective_coresolution(algebra, opposite, v, positions);
    linear_part(&inj.to_projective())
}

/// `N`: replaces every `P(λ)⟨i⟩` by `I(λ)⟨i⟩`, keeping the differential data.
pub fn nakayama(lc: &LinearComplex, opposite: &Alg) -> InjComplex {
    InjComplex::from_projective(&lc.to_projective(), opposite.clone())
}

pub fn nakayama_inverse(inj: &InjComplex) -> LinearComplex {
    linear_part(&inj.to_projective())
}

/// Converts a single element of `C_1` into arrow coefficients, for writers.
pub fn arrow_coefficients(algebra: &Alg, el: &Element) -> Vec<(usize, crate::field::Scalar)> {
    let coords = arrow_coordinates(algebra);
    algebra
        .quiver()
        .arrows_between(el.source, el.target)
        .into_iter()
        .map(|a| (a, el.coords[coords[a]].clone()))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::catalog;
    use crate::module::{hom_space, is_isomorphic};

    struct Pair {
        c: Alg,
        op: Alg,
        d: Alg,
    }

    fn pair(p: &crate::quiver::Presentation) -> Pair {
        let c = Arc::new(GradedAlgebra::build(p).unwrap());
        let op = Arc::new(c.opposite());
        let d = Arc::new(GradedAlgebra::build(&quadratic_dual(p).unwrap().0).unwrap());
        Pair { c, op, d }
    }

    fn shape(lc: &LinearComplex) -> Vec<(i64, usize, usize)> {
        lc.multiplicities().iter().map(|(&(p, v), &n)| (p, v, n)).collect()
    }

    #[test]
    fn intro_table() {
        let s = pair(&catalog::sl2(4));
        let cases = [
            (GradedModule::simple(s.d.clone(), 0, 0), vec![(0, 0, 1)]),
            (GradedModule::simple(s.d.clone(), 1, 0), vec![(0, 1, 1)]),
            (GradedModule::injective(s.d.clone(), 1, 0), vec![(-1, 0, 1), (0, 1, 1)]),
            (GradedModule::injective(s.d.clone(), 0, 0), vec![(-2, 0, 1), (-1, 1, 1), (0, 0, 1)]),
            (GradedModule::projective(s.d.clone(), 1, 0), vec![(0, 1, 1), (1, 0, 1)]),
            (GradedModule::projective(s.d.clone(), 0, 0), vec![(0, 0, 1), (1, 1, 1), (2, 0, 1)]),
        ];
        for (x, expect) in cases {
            let lc = epsilon_inverse(&x, &s.c).unwrap();
            assert_eq!(shape(&lc), expect);
            let pc = lc.to_projective();
            assert!(pc.squares_to_zero());
            // every map between consecutive nonzero positions is nonzero
            for p in lc.positions() {
                if lc.positions().contains(&(p + 1)) {
                    assert!(!pc.entries(p).is_empty());
                }
            }
            assert!(epsilon(&lc, &s.d).unwrap().same_data(&x));
        }
    }

    #[test]
    fn injective_and_projective_objects() {
        for p in [catalog::sl2(4), catalog::a_infinity(4, 4)] {
            let s = pair(&p);
            for v in 0..s.c.num_vertices() {
                let inj = lc_injective(&s.c, v, 6);
                let res = resolve_simple(&s.c, v, 6).complex;
                assert!(linear_part(&res).same_data(&inj));
                assert!(linear_part(&inj.to_projective()).same_data(&inj));
                let x = epsilon(&inj, &s.d).unwrap();
                assert!(is_isomorphic(&x, &GradedModule::injective(s.d.clone(), v, 0)).unwrap());
                let proj = lc_projective(&s.c, &s.op, v, 6);
                let y = epsilon(&proj, &s.d).unwrap();
                assert!(is_isomorphic(&y, &GradedModule::projective(s.d.clone(), v, 0)).unwrap());
            }
        }
    }

    #[test]
    fn a_infinity_examples() {
        let s = pair(&catalog::a_infinity(4, 4));
        assert_eq!(shape(&lc_injective(&s.c, 0, 4)), vec![(0, 0, 1)]);
        assert_eq!(shape(&lc_injective(&s.c, 2, 4)), vec![(-1, 1, 1), (0, 2, 1)]);
        assert_eq!(shape(&lc_projective(&s.c, &s.op, 1, 4)), vec![(0, 1, 1), (1, 2, 1)]);
    }

    #[test]
    fn sl2_projective_objects() {
        let s = pair(&catalog::sl2(4));
        assert_eq!(shape(&lc_projective(&s.c, &s.op, 1, 4)), vec![(0, 1, 1), (1, 0, 1)]);
        assert_eq!(shape(&lc_projective(&s.c, &s.op, 0, 4)), vec![(0, 0, 1), (1, 1, 1), (2, 0, 1)]);
    }

    #[test]
    fn nakayama_round_trip() {
        let s = pair(&catalog::sl2(4));
        let inj = lc_injective(&s.c, 0, 4);
        let n = nakayama(&inj, &s.op);
        let t: Vec<_> = n.terms().iter().flat_map(|(&p, v)| v.iter().map(move |x| (p, x.vertex, x.shift))).collect();
        assert_eq!(t, vec![(-2, 0, -2), (-1, 1, -1), (0, 0, 0)]);
        assert!(nakayama_inverse(&n).same_data(&inj));
        let m = n.materialize().unwrap();
        assert!(m.squares_to_zero());
        assert!(is_isomorphic(&m.component(-1), &GradedModule::injective(s.c.clone(), 1, -1)).unwrap());
        let single = LinearComplex::simple(s.c.clone(), 1, 0);
        let ns = nakayama(&single, &s.op).materialize().unwrap();
        assert!(is_isomorphic(&ns.component(0), &GradedModule::injective(s.c.clone(), 1, 0)).unwrap());
    }

    #[test]
    fn simples_shifts_and_socle() {
        let s = pair(&catalog::sl2(4));
        for v in 0..2 {
            for i in -2..=2 {
                let x = epsilon(&LinearComplex::simple(s.c.clone(), v, i), &s.d).unwrap();
                assert!(x.same_data(&GradedModule::simple(s.d.clone(), v, -i)));
            }
            let inj = lc_injective(&s.c, v, 4);
            let e = epsilon(&inj, &s.d).unwrap();
            for i in -2..=2 {
                let lhs = epsilon(&inj.shift(i), &s.d).unwrap();
                assert!(is_isomorphic(&lhs, &e.shift(-i)).unwrap());
            }
            // the socle is the simple object at (v, 0)
            for w in 0..2 {
                for i in -3..=3 {
                    let sim = epsilon(&LinearComplex::simple(s.c.clone(), w, i), &s.d).unwrap();
                    let n = hom_space(&sim, &e, 0).unwrap().len();
                    assert_eq!(n, usize::from(w == v && i == 0));
                }
            }
        }
    }

    #[test]
    fn linear_part_drops_off_diagonal_summands() {
        let s = pair(&catalog::sl2(4));
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![Summand { vertex: 0, shift: 5 }]);
        let pc = ProjComplex::new(s.c.clone(), terms, BTreeMap::new()).unwrap();
        assert!(linear_part(&pc).is_zero());
        let b3 = Arc::new(GradedAlgebra::build_monomial(&catalog::truncated_polynomial(3, 5)).unwrap());
        let lp = linear_part(&resolve_simple(&b3, 0, 4).complex);
        assert_eq!(shape(&lp), vec![(-1, 0, 1), (0, 0, 1)]);
        assert_eq!(lp.blocks().len(), 1);
    }
}
