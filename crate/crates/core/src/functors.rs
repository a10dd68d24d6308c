//! The quadratic duality functors `K` and `K′`, the Koszulity test and round-trip checks.
//!
//! `K′` sends a complex `Y` of `C^!`-modules to the total complex of `ε⁻¹(Y^p)`:
//! `P(λ)⟨i⟩ ⊗ Y^p(λ)_i` sits in position `p + i`, with differential
//! `d_Y + (-1)^p Σ_a a ⊗ Y(a*)`.
//!
//! `K` sends a complex `X` of `C`-modules to the complex with
//! `K(X)^n(μ)_j = ⊕_{q,λ} X^q(λ)_{n-q} ⊗ C^!_b(μ, λ)^*`, `b = -(j + n - q)`, where `C^!`
//! acts on the dual factor by `φ ↦ φ(−∘α)` and the differential is
//! `d_X ⊗ 1 + (-1)^q Σ_a (a·) ⊗ φ(a*∘−)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Element, GradedAlgebra};
use crate::complex::{quasi_isomorphic_to_module, GradedComplex};
use crate::dual::quadratic_dual;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linear::is_dual_pair;
use crate::matrix::Matrix;
use crate::module::{Alg, GradedModule, ModuleHom};
use crate::projective::{resolve_simple, Entries, ProjComplex, Summand};
use crate::quiver::Presentation;

/// An algebra together with its quadratic dual and opposite, built once.
#[derive(Clone, Debug)]
pub struct DualityPair {
    pub algebra: Alg,
    pub dual: Alg,
    pub opposite: Alg,
    pub dual_opposite: Alg,
}

impl DualityPair {
    pub fn new(pres: &Presentation) -> Result<DualityPair> {
        let algebra = Arc::new(GradedAlgebra::build(pres)?);
        let dual_pres = quadratic_dual(pres)?.0;
        let dual = Arc::new(GradedAlgebra::build(&dual_pres)?);
        let opposite = Arc::new(algebra.opposite());
        let dual_opposite = Arc::new(dual.opposite());
        Ok(DualityPair { algebra, dual, opposite, dual_opposite })
    }

    /// The pair with the roles of `C` and `C^!` exchanged.
    pub fn swapped(&self) -> Result<DualityPair> {
        DualityPair::new(self.dual.require_presentation()?)
    }
}

fn require_pair(c: &Alg, d: &Alg) -> Result<()> {
    if is_dual_pair(c, d)? {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch("expected an algebra and its quadratic dual".into()))
    }
}

/// `K′Y` as a complex of projectives over `C`.
pub fn kprime(y: &GradedComplex, c: &Alg) -> Result<ProjComplex> {
    require_pair(c, y.algebra())?;
    let field = c.field();
    // (p, λ, i) ↦ (total position, offset of the first copy)
    let mut place: BTreeMap<(i64, usize, i64), (i64, usize)> = BTreeMap::new();
    let mut terms: BTreeMap<i64, Vec<Summand>> = BTreeMap::new();
    for (&p, m) in y.components() {
        for (&(v, i), &n) in m.dims() {
            let t = terms.entry(p + i).or_default();
            place.insert((p, v, i), (p + i, t.len()));
            t.extend(std::iter::repeat_n(Summand { vertex: v, shift: i }, n));
        }
    }
    let mut diffs: BTreeMap<i64, Entries> = BTreeMap::new();
    let mut add = |pos: i64, r: usize, col: usize, el: Element| {
        let ents = diffs.entry(pos).or_default();
        match ents.get_mut(&(r, col)) {
            Some(x) => *x = x.add(&el),
            None => {
                ents.insert((r, col), el);
            }
        }
    };
    for (&p, m) in y.components() {
        let sign = if p.rem_euclid(2) == 1 { -field.one() } else { field.one() };
        for (&(ai, i), mat) in m.actions() {
            let arrow = &c.quiver().arrows()[ai];
            // a*: a.target → a.source in C^!, so Y(a*) maps the a.target part to the a.source part
            let (Some(&(pos, c0)), Some(&(_, r0))) = (place.get(&(p, arrow.target, i)), place.get(&(p, arrow.source, i + 1))) else {
                continue;
            };
            let a = c.arrow_element(ai);
            for r in 0..mat.rows() {
                for col in 0..mat.cols() {
                    let x = mat.get(r, col);
                    if !x.is_zero() {
                        add(pos, r0 + r, c0 + col, a.scale(&(&sign * x)));
                    }
                }
            }
        }
        let next = y.component(p + 1);
        let d = y.diff(p);
        for &(v, i) in m.dims().keys() {
            let Some(&(pos, c0)) = place.get(&(p, v, i)) else { continue };
            let Some(&(_, r0)) = place.get(&(p + 1, v, i)) else { continue };
            let blk = d.block(m, &next, v, i);
            for r in 0..blk.rows() {
                for col in 0..blk.cols() {
                    let x = blk.get(r, col);
                    if !x.is_zero() {
                        add(pos, r0 + r, c0 + col, c.unit(v).scale(x));
                    }
                }
            }
        }
    }
    let pc = ProjComplex::new(c.clone(), terms, diffs)?;
    Ok(pc)
}

/// `K′Y` as a complex of modules; needs `C` to vanish below the bound.
pub fn kprime_modules(y: &GradedComplex, c: &Alg) -> Result<GradedComplex> {
    kprime(y, c)?.materialize()
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows() + k, j * b.cols() + l, x * y);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct KBlock {
    q: i64,
    lambda: usize,
    e: i64,
    b: usize,
}

/// Layout of `K(X)^n(μ)_j` as blocks `X^q(λ)_e ⊗ C^!_b(μ, λ)^*`.
struct KLayout {
    blocks: BTreeMap<(i64, usize, i64), Vec<(KBlock, usize, usize, usize)>>,
}

impl KLayout {
    fn new(x: &GradedComplex, d: &GradedAlgebra) -> KLayout {
        let mut blocks: BTreeMap<(i64, usize, i64), Vec<(KBlock, usize, usize, usize)>> = BTreeMap::new();
        for (&q, m) in x.components() {
            for (&(lambda, e), &dx) in m.dims() {
                let n = q + e;
                for mu in 0..d.num_vertices() {
                    for b in 0..=d.bound() {
                        let dc = d.dim(b, mu, lambda);
                        if dc == 0 {
                            continue;
                        }
                        let j = -(b as i64) - e;
                        let list = blocks.entry((n, mu, j)).or_default();
                        let off = list.last().map_or(0, |&(_, o, a, c)| o + a * c);
                        list.push((KBlock { q, lambda, e, b }, off, dx, dc));
                    }
                }
            }
        }
        KLayout { blocks }
    }

    fn dim(&self, n: i64, mu: usize, j: i64) -> usize {
        self.blocks.get(&(n, mu, j)).and_then(|l| l.last()).map_or(0, |&(_, o, a, c)| o + a * c)
    }

    fn find(&self, n: i64, mu: usize, j: i64, blk: KBlock) -> Option<usize> {
        self.blocks.get(&(n, mu, j))?.iter().find(|e| e.0 == blk).map(|e| e.1)
    }
}

fn put(m: &mut Matrix, r0: usize, c0: usize, b: &Matrix) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let x = b.get(i, j);
            if !x.is_zero() {
                let cur = m.get(r0 + i, c0 + j).clone();
                m.set(r0 + i, c0 + j, &cur + x);
            }
        }
    }
}

/// `T[l][k] = coord_k(f(y_l))` for `y_l` a basis of `C^!_{deg}(s, t)`.
fn coordinate_matrix(d: &GradedAlgebra, deg: usize, s: usize, t: usize, cols: usize, f: impl Fn(&Element) -> Element) -> Matrix {
    let rows = d.dim(deg, s, t);
    let mut m = Matrix::zeros(d.field(), rows, cols);
    for l in 0..rows {
        let img = f(&d.basis_element(deg, s, t, l));
        for (k, v) in img.coords.into_iter().enumerate() {
            m.set(l, k, v);
        }
    }
    m
}

/// `K(X)` as a complex of `C^!`-modules. Needs `C^!` to vanish below its bound.
pub fn kfunctor(x: &GradedComplex, dual: &Alg) -> Result<GradedComplex> {
    let c = x.algebra().clone();
    require_pair(&c, dual)?;
    if !dual.is_finite() {
        return Err(Error::WindowOverflow(format!(
            "the dual algebra does not vanish up to degree {}; K would need infinitely many terms",
            dual.bound()
        )));
    }
    let d: &GradedAlgebra = dual;
    let field = c.field();
    let layout = KLayout::new(x, d);
    let mut positions: Vec<i64> = layout.blocks.keys().map(|k| k.0).collect();
    positions.dedup();
    let mut components = BTreeMap::new();
    for &n in &positions {
        let mut dims = BTreeMap::new();
        let mut actions = BTreeMap::new();
        for &(nn, mu, j) in layout.blocks.keys() {
            if nn != n {
                continue;
            }
            dims.insert((mu, j), layout.dim(n, mu, j));
        }
        for (alpha, arr) in d.quiver().arrows().iter().enumerate() {
            let ael = d.arrow_element(alpha);
            for &(nn, mu, j) in layout.blocks.keys() {
                if nn != n || mu != arr.source {
                    continue;
                }
                let mut mat = Matrix::zeros(field, layout.dim(n, arr.target, j + 1), layout.dim(n, mu, j));
                for &(blk, off, dx, dc) in &layout.blocks[&(n, mu, j)] {
                    if blk.b == 0 {
                        continue;
                    }
                    let tb = KBlock { b: blk.b - 1, ..blk };
                    let Some(toff) = layout.find(n, arr.target, j + 1, tb) else { continue };
                    let t = coordinate_matrix(d, blk.b - 1, arr.target, blk.lambda, dc, |y| d.multiply(y, &ael));
                    put(&mut mat, toff, off, &kron(&Matrix::identity(field, dx), &t));
                }
                actions.insert((alpha, j), mat);
            }
        }
        components.insert(n, GradedModule::new(dual.clone(), dims, actions)?);
    }
    let mut diffs = BTreeMap::new();
    for &n in &positions {
        let mut h = ModuleHom::zero(0);
        for (&(nn, mu, j), list) in &layout.blocks {
            if nn != n {
                continue;
            }
            let mut mat = Matrix::zeros(field, layout.dim(n + 1, mu, j), layout.dim(n, mu, j));
            for &(blk, off, _, dc) in list {
                let xq = x.component(blk.q);
                // d_X ⊗ 1
                let tb = KBlock { q: blk.q + 1, ..blk };
                if let Some(toff) = layout.find(n + 1, mu, j, tb) {
                    let dxm = x.diff(blk.q).block(&xq, &x.component(blk.q + 1), blk.lambda, blk.e);
                    put(&mut mat, toff, off, &kron(&dxm, &Matrix::identity(field, dc)));
                }
                // (-1)^q Σ_a (a·) ⊗ φ(a*∘−)
                if blk.b == 0 {
                    continue;
                }
                let sign: Scalar = if blk.q.rem_euclid(2) == 1 { -field.one() } else { field.one() };
                for (ai, arrow) in c.quiver().arrows().iter().enumerate() {
                    if arrow.source != blk.lambda {
                        continue;
                    }
                    let tb = KBlock { q: blk.q, lambda: arrow.target, e: blk.e + 1, b: blk.b - 1 };
                    let Some(toff) = layout.find(n + 1, mu, j, tb) else { continue };
                    let astar = d.arrow_element(ai);
                    let t = coordinate_matrix(d, blk.b - 1, mu, arrow.target, dc, |y| d.multiply(&astar, y));
                    let am = xq.action(ai, blk.e).scale(&sign);
                    put(&mut mat, toff, off, &kron(&am, &t));
                }
            }
            h.set(mu, j, mat);
        }
        diffs.insert(n, h);
    }
    GradedComplex::new(dual.clone(), components, diffs)
}

/// `K_C ≅ 𝔻 K′_D 𝔻` with `D = (C^!)^op`, whose dual is `C^op`.
pub fn kfunctor_via_duality(x: &GradedComplex, pair: &DualityPair) -> Result<GradedComplex> {
    let c = &pair.algebra;
    if !c.require_presentation()?.is_quadratic() {
        return Err(Error::NonQuadratic("duality conjugation needs a quadratic algebra".into()));
    }
    let d_pres = pair.dual.require_presentation()?.opposite();
    let d = Arc::new(GradedAlgebra::build(&d_pres)?);
    let d_shriek = Arc::new(GradedAlgebra::build(&quadratic_dual(&d_pres)?.0)?);
    let dx = x.dualize_over(pair.opposite.clone())?.rebase(d_shriek)?;
    let y = kprime(&dx, &d)?.materialize()?;
    y.dualize_over(pair.dual.clone())
}

/// Position and shift of the first summand `P(μ)⟨s⟩` in position `-i` with `s ≠ -i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertex: usize,
    pub position: i64,
    pub shift: i64,
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub koszul: bool,
    pub bound: usize,
    pub witness: Option<Witness>,
    pub lines: Vec<(String, String)>,
    pub cross_check: Option<bool>,
}

impl KoszulReport {
    /// `KOSZUL up to k` or `NOT KOSZUL, witness λ=… position … shift …`.
    pub fn verdict(&self, a: &GradedAlgebra) -> String {
        match &self.witness {
            None => format!("KOSZUL up to {}", self.bound),
            Some(w) => format!("NOT KOSZUL, witness λ={} position {} shift {}", a.label(w.vertex), minus(w.position), minus(w.shift)),
        }
    }
}

fn minus(n: i64) -> String {
    if n < 0 {
        format!("−{}", -n)
    } else {
        n.to_string()
    }
}

/// Builds the algebra of any presentation: quadratic, monomial, or general homogeneous.
pub fn algebra_of(pres: &Presentation) -> GradedAlgebra {
    if pres.is_quadratic() {
        GradedAlgebra::build(pres).expect("quadratic presentations build")
    } else {
        GradedAlgebra::from_relations(pres)
    }
}

/// Checks linearity of the minimal resolutions of all simples through position `-k`.
/// With `cross_check`, also tests `K P(λ) ≅ L^!(λ)` for each vertex.
pub fn koszulity_check(pres: &Presentation, k: usize, cross_check: bool) -> Result<KoszulReport> {
    let bound = pres.bound().max(k + 1);
    let pres = pres.with_bound(bound)?;
    let a = Arc::new(algebra_of(&pres));
    let mut lines = Vec::new();
    let mut witness = None;
    for v in 0..a.num_vertices() {
        let r = resolve_simple(&a, v, k);
        let mut shape = Vec::new();
        for (&p, s) in r.complex.terms().iter().rev() {
            for x in s {
                shape.push(format!("{}:{}<{}>", p, a.label(x.vertex), x.shift));
                if x.shift != p && witness.is_none() {
                    witness = Some(Witness { vertex: v, position: p, shift: x.shift });
                }
            }
        }
        lines.push((format!("resolution.{}", a.label(v)), shape.join(" ")));
        if let Some(t) = r.valid_through {
            lines.push((format!("resolution.{}.valid_through_degree", a.label(v)), t.to_string()));
        }
    }
    let mut cross = None;
    if cross_check && witness.is_none() && pres.is_quadratic() {
        let pair = DualityPair::new(&pres)?;
        if !pair.dual.is_finite() {
            lines.push(("cross_check".into(), "skipped: the dual algebra is not finite-dimensional".into()));
            return Ok(KoszulReport { koszul: true, bound: k, witness, lines, cross_check: None });
        }
        let mut ok = true;
        for v in 0..a.num_vertices() {
            let kp = kfunctor(&GradedComplex::single(GradedModule::projective(pair.algebra.clone(), v, 0), 0), &pair.dual)?;
            let holds = quasi_isomorphic_to_module(&kp, &GradedModule::simple(pair.dual.clone(), v, 0), 0)?;
            lines.push((format!("cross_check.K_P.{}", a.label(v)), holds.to_string()));
            ok &= holds;
        }
        cross = Some(ok);
    }
    Ok(KoszulReport { koszul: witness.is_none(), bound: k, witness, lines, cross_check: cross })
}

/// One line of a round-trip report.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub name: String,
    pub direction: &'static str,
    pub holds: bool,
}

/// `K′K X ≃ X` for modules over `C`: the homology of `K′K X` is `X` in position 0 and zero elsewhere.
pub fn roundtrip_module(x: &GradedModule, pair: &DualityPair) -> Result<bool> {
    let kx = kfunctor(&GradedComplex::single(x.clone(), 0), &pair.dual)?;
    let back = kprime_modules(&kx, &pair.algebra)?;
    quasi_isomorphic_to_module(&back, x, 0)
}

/// `K K′ Y ≃ Y` for modules over `C^!`.
pub fn roundtrip_dual_module(y: &GradedModule, pair: &DualityPair) -> Result<bool> {
    let ky = kprime_modules(&GradedComplex::single(y.clone(), 0), &pair.algebra)?;
    let back = kfunctor(&ky, &pair.dual)?;
    quasi_isomorphic_to_module(&back, y, 0)
}

/// Simples, projectives, injectives and some shifts over one algebra.
pub fn standard_corpus(a: &Alg, shifts: &[i64]) -> Vec<(String, GradedModule)> {
    let mut out = Vec::new();
    for v in 0..a.num_vertices() {
        let l = a.label(v).to_string();
        for &j in shifts {
            let tag = if j == 0 { String::new() } else { format!("<{j}>") };
            out.push((format!("L({l}){tag}"), GradedModule::simple(a.clone(), v, j)));
            out.push((format!("P({l}){tag}"), GradedModule::projective(a.clone(), v, j)));
            out.push((format!("I({l}){tag}"), GradedModule::injective(a.clone(), v, j)));
        }
    }
    out
}

/// Round trips `K′∘K` on a corpus over `C` and `K∘K′` on a corpus over `C^!`.
pub fn koszul_roundtrip_check(pair: &DualityPair, corpus: &[(String, GradedModule)], dual_corpus: &[(String, GradedModule)]) -> Result<Vec<RoundTrip>> {
    let mut out = Vec::new();
    for (name, x) in corpus {
        out.push(RoundTrip { name: name.clone(), direction: "K'K", holds: roundtrip_module(x, pair)? });
    }
    for (name, y) in dual_corpus {
        out.push(RoundTrip { name: name.clone(), direction: "KK'", holds: roundtrip_dual_module(y, pair)? });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complex::{complexes_isomorphic, homotopy_hom_dim, identity_cone};
    use crate::module::is_isomorphic;

    fn single(m: GradedModule) -> GradedComplex {
        GradedComplex::single(m, 0)
    }

    #[test]
    fn k_of_simples_are_dual_injectives() {
        for p in [catalog::sl2(4), catalog::a_infinity(4, 4)] {
            let pair = DualityPair::new(&p).unwrap();
            for v in 0..pair.algebra.num_vertices() {
                for (j, i) in [(0, 0), (1, 0), (-1, 2), (2, -1)] {
                    let x = single(GradedModule::simple(pair.algebra.clone(), v, j)).shift_position(i);
                    let kx = kfunctor(&x, &pair.dual).unwrap();
                    let expect = single(GradedModule::injective(pair.dual.clone(), v, 0)).shift_grading(-j).shift_position(i + j);
                    assert!(complexes_isomorphic(&kx, &expect).unwrap(), "K L({v})<{j}>[{i}]");
                    let via = kfunctor_via_duality(&x, &pair).unwrap();
                    assert!(complexes_isomorphic(&via, &expect).unwrap(), "via duality L({v})<{j}>[{i}]");
                }
            }
        }
    }

    #[test]
    fn kprime_of_dual_simples_are_projectives() {
        for p in [catalog::sl2(4), catalog::a_infinity(4, 4)] {
            let pair = DualityPair::new(&p).unwrap();
            for v in 0..pair.algebra.num_vertices() {
                for (j, i) in [(0, 0), (1, 0), (-2, 1), (1, -1)] {
                    let y = single(GradedModule::simple(pair.dual.clone(), v, j)).shift_position(i);
                    let ky = kprime_modules(&y, &pair.algebra).unwrap();
                    let expect = single(GradedModule::projective(pair.algebra.clone(), v, 0)).shift_grading(-j).shift_position(i + j);
                    assert!(complexes_isomorphic(&ky, &expect).unwrap());
                }
            }
        }
    }

    #[test]
    fn kprime_of_dual_injective_is_linear_resolution() {
        let pair = DualityPair::new(&catalog::sl2(4)).unwrap();
        for v in 0..2 {
            let y = single(GradedModule::injective(pair.dual.clone(), v, 0));
            let pc = kprime(&y, &pair.algebra).unwrap();
            let lin = crate::linear::lc_injective(&pair.algebra, v, 4).to_projective();
            assert!(complexes_isomorphic(&pc.materialize().unwrap(), &lin.materialize().unwrap()).unwrap());
        }
    }

    #[test]
    fn k_of_projectives_over_koszul_algebra() {
        let pair = DualityPair::new(&catalog::sl2(4)).unwrap();
        for v in 0..2 {
            let kp = kfunctor(&single(GradedModule::projective(pair.algebra.clone(), v, 0)), &pair.dual).unwrap();
            assert!(quasi_isomorphic_to_module(&kp, &GradedModule::simple(pair.dual.clone(), v, 0), 0).unwrap());
        }
    }

    #[test]
    fn round_trips_on_sl2() {
        let pair = DualityPair::new(&catalog::sl2(4)).unwrap();
        let corpus = standard_corpus(&pair.algebra, &[0, 1]);
        let dual = standard_corpus(&pair.dual, &[0]);
        for r in koszul_roundtrip_check(&pair, &corpus, &dual).unwrap() {
            assert!(r.holds, "{} {}", r.direction, r.name);
        }
    }

    #[test]
    fn adjunction_dimensions() {
        let pair = DualityPair::new(&catalog::sl2(4)).unwrap();
        let xs = standard_corpus(&pair.algebra, &[0]);
        let ys = standard_corpus(&pair.dual, &[0]);
        for (_, x) in xs.iter().take(4) {
            let kx = kfunctor(&single(x.clone()), &pair.dual).unwrap();
            for (_, y) in ys.iter().take(4) {
                let y = single(y.clone());
                let kpy = kprime_modules(&y, &pair.algebra).unwrap();
                let lhs = homotopy_hom_dim(&kpy, &single(x.clone())).unwrap();
                let rhs = homotopy_hom_dim(&y, &kx).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn kprime_preserves_acyclicity() {
        let pair = DualityPair::new(&catalog::sl2(4)).unwrap();
        let y = single(GradedModule::injective(pair.dual.clone(), 0, 0));
        let cone = identity_cone(&y);
        assert!(cone.is_acyclic());
        assert!(kprime_modules(&cone, &pair.algebra).unwrap().is_acyclic());
    }

    #[test]
    fn koszul_verdicts() {
        let sl2 = koszulity_check(&catalog::sl2(4), 6, true).unwrap();
        assert!(sl2.koszul);
        assert_eq!(sl2.cross_check, Some(true));
        assert!(koszulity_check(&catalog::truncated_polynomial(2, 4), 6, false).unwrap().koszul);
        let b3 = koszulity_check(&catalog::truncated_polynomial(3, 5), 3, false).unwrap();
        assert_eq!(b3.witness, Some(Witness { vertex: 0, position: -2, shift: -3 }));
        let a = algebra_of(&catalog::truncated_polynomial(3, 5));
        assert_eq!(b3.verdict(&a), "NOT KOSZUL, witness λ=1 position −2 shift −3");
    }

    #[test]
    fn infinite_dual_overflows() {
        let pair = DualityPair::new(&catalog::truncated_polynomial(2, 4)).unwrap();
        let x = single(GradedModule::simple(pair.algebra.clone(), 0, 0));
        assert!(matches!(kfunctor(&x, &pair.dual), Err(Error::WindowOverflow(_))));
        let y = single(GradedModule::simple(pair.dual.clone(), 0, 0));
        let ky = kprime_modules(&y, &pair.algebra).unwrap();
        assert!(is_isomorphic(&ky.component(0), &GradedModule::projective(pair.algebra.clone(), 0, 0)).unwrap());
    }
}
