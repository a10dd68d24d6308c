//! Bounded complexes of graded modules.
//!
//! Differentials raise the position: `d^p: X^p → X^{p+1}`. The position shift is
//! `X[i]^p = X^{p+i}` with differential `(-1)^i d`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::module::{hom_space, kernel, quotient, same_algebra, search_invertible, Alg, GradedModule, ModuleHom};

#[derive(Clone, Debug)]
pub struct GradedComplex {
    algebra: Alg,
    components: BTreeMap<i64, GradedModule>,
    diffs: BTreeMap<i64, ModuleHom>,
}

impl GradedComplex {
    pub fn zero(algebra: Alg) -> GradedComplex {
        GradedComplex { algebra, components: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// A module concentrated in one position.
    pub fn single(module: GradedModule, position: i64) -> GradedComplex {
        let mut c = GradedComplex::zero(module.algebra().clone());
        if !module.is_zero() {
            c.components.insert(position, module);
        }
        c
    }

    /// Builds a complex, checking that differentials are homomorphisms and square to zero.
    pub fn new(algebra: Alg, components: BTreeMap<i64, GradedModule>, diffs: BTreeMap<i64, ModuleHom>) -> Result<GradedComplex> {
        let c = GradedComplex::unchecked(algebra, components, diffs);
        for m in c.components.values() {
            if !same_algebra(m.algebra(), &c.algebra) {
                return Err(Error::AlgebraMismatch("component over another algebra".into()));
            }
        }
        for (&p, d) in &c.diffs {
            if d.degree != 0 || !d.is_homomorphism(&c.component(p), &c.component(p + 1)) {
                return Err(Error::NotComplex(format!("differential at position {p} is not a degree-0 homomorphism")));
            }
        }
        if !c.squares_to_zero() {
            return Err(Error::NotComplex("d∘d ≠ 0".into()));
        }
        Ok(c)
    }

    pub(crate) fn unchecked(algebra: Alg, components: BTreeMap<i64, GradedModule>, diffs: BTreeMap<i64, ModuleHom>) -> GradedComplex {
        let components: BTreeMap<i64, GradedModule> = components.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let diffs = diffs
            .into_iter()
            .filter(|(p, d)| components.contains_key(p) && components.contains_key(&(p + 1)) && !d.is_zero())
            .collect();
        GradedComplex { algebra, components, diffs }
    }

    pub fn algebra(&self) -> &Alg {
        &self.algebra
    }

    pub fn positions(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn components(&self) -> &BTreeMap<i64, GradedModule> {
        &self.components
    }

    pub fn component(&self, p: i64) -> GradedModule {
        self.components.get(&p).cloned().unwrap_or_else(|| GradedModule::zero(self.algebra.clone()))
    }

    pub fn diff(&self, p: i64) -> ModuleHom {
        self.diffs.get(&p).cloned().unwrap_or_else(|| ModuleHom::zero(0))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn squares_to_zero(&self) -> bool {
        self.diffs.keys().all(|&p| {
            let (a, b, c) = (self.component(p), self.component(p + 1), self.component(p + 2));
            self.diff(p + 1).compose(&self.diff(p), &a, &b, &c).is_zero()
        })
    }

    /// `X⟨j⟩`, shifting every component.
    pub fn shift_grading(&self, j: i64) -> GradedComplex {
        GradedComplex {
            algebra: self.algebra.clone(),
            components: self.components.iter().map(|(&p, m)| (p, m.shift(j))).collect(),
            diffs: self.diffs.iter().map(|(&p, d)| (p, d.shift(j))).collect(),
        }
    }

    /// `X[i]`: the component at `p` moves to `p - i`, differentials pick up `(-1)^i`.
    pub fn shift_position(&self, i: i64) -> GradedComplex {
        let sign = if i.rem_euclid(2) == 0 { self.algebra.field().one() } else { -self.algebra.field().one() };
        GradedComplex {
            algebra: self.algebra.clone(),
            components: self.components.iter().map(|(&p, m)| (p - i, m.clone())).collect(),
            diffs: self.diffs.iter().map(|(&p, d)| (p - i, d.scale(&sign))).collect(),
        }
    }

    /// Cohomology at position `p` as a module.
    pub fn homology(&self, p: i64) -> GradedModule {
        let x = self.component(p);
        let (kmod, inc) = kernel(&x, &self.component(p + 1), &self.diff(p));
        let prev = self.component(p - 1);
        let d = self.diff(p - 1);
        let mut sub = BTreeMap::new();
        for (&(v, deg), b) in inc.blocks() {
            let img = d.block(&prev, &x, v, deg);
            if img.cols() == 0 {
                continue;
            }
            let coords = b.solve_matrix(&img).expect("image lies in the kernel");
            sub.insert((v, deg), coords);
        }
        quotient(&kmod, &sub).0
    }

    pub fn homology_positions(&self) -> Vec<i64> {
        self.positions().into_iter().filter(|&p| !self.homology(p).is_zero()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_positions().is_empty()
    }

    /// Graded dual over the opposite algebra: `(𝔻X)^p = 𝔻(X^{-p})`, `d^p = 𝔻(d^{-p-1})`.
    pub fn dualize_over(&self, opposite: Alg) -> Result<GradedComplex> {
        let mut components = BTreeMap::new();
        for (&p, m) in &self.components {
            components.insert(-p, m.dualize_over(opposite.clone())?);
        }
        let diffs = self.diffs.iter().map(|(&p, d)| (-p - 1, d.dualize())).collect();
        Ok(GradedComplex::unchecked(opposite, components, diffs))
    }

    pub fn rebase(&self, algebra: Alg) -> Result<GradedComplex> {
        let mut components = BTreeMap::new();
        for (&p, m) in &self.components {
            components.insert(p, m.rebase(algebra.clone())?);
        }
        Ok(GradedComplex { algebra, components, diffs: self.diffs.clone() })
    }

    /// `position:dims` per component, for reports.
    pub fn describe(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components.iter().map(|(p, m)| format!("[{p}] {m}")).collect::<Vec<_>>().join("; ")
    }
}

/// Flattens a hom into a vector over the blocks `src(v,d) → tgt(v,d+k)`.
fn flatten(h: &ModuleHom, src: &GradedModule, tgt: &GradedModule, out: &mut Vec<Scalar>) {
    for &(v, d) in src.dims().keys() {
        let b = h.block(src, tgt, v, d);
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.push(b.get(i, j).clone());
            }
        }
    }
}

fn hom_len(src: &GradedModule, tgt: &GradedModule, k: i64) -> usize {
    src.dims().iter().map(|(&(v, d), &n)| n * tgt.dim(v, d + k)).sum()
}

/// A degree-zero chain map, one hom per position.
pub type ChainMap = BTreeMap<i64, ModuleHom>;

fn union_positions(x: &GradedComplex, y: &GradedComplex) -> Vec<i64> {
    let s: BTreeSet<i64> = x.components.keys().chain(y.components.keys()).copied().collect();
    s.into_iter().collect()
}

fn check_same(x: &GradedComplex, y: &GradedComplex) -> Result<()> {
    if same_algebra(&x.algebra, &y.algebra) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch("complexes over different algebras".into()))
    }
}

/// Basis of the space of degree-zero chain maps `X → Y`.
pub fn chain_maps(x: &GradedComplex, y: &GradedComplex) -> Result<Vec<ChainMap>> {
    check_same(x, y)?;
    let field = x.algebra.field();
    let positions = union_positions(x, y);
    let mut unknowns: Vec<(i64, ModuleHom)> = Vec::new();
    for &p in &positions {
        for h in hom_space(&x.component(p), &y.component(p), 0)? {
            unknowns.push((p, h));
        }
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    // constraint per p: d_Y^p f^p - f^{p+1} d_X^p = 0 as maps X^p → Y^{p+1}
    let mut rows_blocks: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for &p in &positions {
        let (xp, xp1, yp, yp1) = (x.component(p), x.component(p + 1), y.component(p), y.component(p + 1));
        let len = hom_len(&xp, &yp1, 0);
        if len == 0 {
            continue;
        }
        let mut cols = Vec::new();
        for (q, h) in &unknowns {
            let mut v = Vec::with_capacity(len);
            if *q == p {
                flatten(&y.diff(p).compose(h, &xp, &yp, &yp1), &xp, &yp1, &mut v);
            } else if *q == p + 1 {
                flatten(&h.compose(&x.diff(p), &xp, &xp1, &yp1).scale(&-field.one()), &xp, &yp1, &mut v);
            } else {
                v = vec![field.zero(); len];
            }
            cols.push(v);
        }
        rows_blocks.push(cols);
    }
    let n = unknowns.len();
    let mut system: Vec<Vec<Scalar>> = Vec::new();
    for cols in rows_blocks {
        let len = cols[0].len();
        for r in 0..len {
            system.push((0..n).map(|c| cols[c][r].clone()).collect());
        }
    }
    let ker = if system.is_empty() { Matrix::identity(field, n) } else { Matrix::from_rows(field, system).kernel_basis() };
    Ok(ker.columns().iter().map(|c| combine(&unknowns, c, x, y)).collect())
}

fn combine(unknowns: &[(i64, ModuleHom)], coeffs: &[Scalar], x: &GradedComplex, y: &GradedComplex) -> ChainMap {
    let mut out: ChainMap = BTreeMap::new();
    for ((p, h), c) in unknowns.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let (src, tgt) = (x.component(*p), y.component(*p));
        let term = h.scale(c);
        let e = out.entry(*p).or_insert_with(|| ModuleHom::zero(0));
        *e = e.add(&term, &src, &tgt);
    }
    out
}

fn combine_maps(maps: &[ChainMap], coeffs: &[Scalar], x: &GradedComplex, y: &GradedComplex) -> ChainMap {
    let mut out: ChainMap = BTreeMap::new();
    for (m, c) in maps.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (&p, h) in m {
            let (src, tgt) = (x.component(p), y.component(p));
            let e = out.entry(p).or_insert_with(|| ModuleHom::zero(0));
            *e = e.add(&h.scale(c), &src, &tgt);
        }
    }
    out
}

fn is_chain_iso(f: &ChainMap, x: &GradedComplex, y: &GradedComplex) -> bool {
    union_positions(x, y).into_iter().all(|p| {
        let (src, tgt) = (x.component(p), y.component(p));
        f.get(&p).cloned().unwrap_or_else(|| ModuleHom::zero(0)).is_isomorphism(&src, &tgt)
    })
}

/// Searches an isomorphism of complexes among the degree-zero chain maps.
pub fn find_complex_isomorphism(x: &GradedComplex, y: &GradedComplex) -> Result<Option<ChainMap>> {
    check_same(x, y)?;
    for p in union_positions(x, y) {
        if x.component(p).dims() != y.component(p).dims() {
            return Ok(None);
        }
    }
    let basis = chain_maps(x, y)?;
    Ok(search_invertible(&basis, x.algebra.field(), |c| {
        let f = combine_maps(&basis, c, x, y);
        is_chain_iso(&f, x, y).then_some(f)
    }))
}

pub fn complexes_isomorphic(x: &GradedComplex, y: &GradedComplex) -> Result<bool> {
    if x.is_zero() && y.is_zero() {
        return Ok(true);
    }
    Ok(find_complex_isomorphism(x, y)?.is_some())
}

/// Dimension of degree-zero maps `X → Y` in the homotopy category.
pub fn homotopy_hom_dim(x: &GradedComplex, y: &GradedComplex) -> Result<usize> {
    let maps = chain_maps(x, y)?;
    let positions = union_positions(x, y);
    let mut null = Vec::new();
    for &p in &positions {
        for h in hom_space(&x.component(p), &y.component(p - 1), 0)? {
            // f = d_Y h + h d_X, supported at p-1 and p
            let mut v = Vec::new();
            for &q in &positions {
                let (src, tgt) = (x.component(q), y.component(q));
                let term = if q == p {
                    y.diff(p - 1).compose(&h, &src, &y.component(p - 1), &tgt)
                } else if q == p - 1 {
                    h.compose(&x.diff(p - 1), &src, &x.component(p), &tgt)
                } else {
                    ModuleHom::zero(0)
                };
                flatten(&term, &src, &tgt, &mut v);
            }
            null.push(v);
        }
    }
    let rank = if null.is_empty() || null[0].is_empty() { 0 } else { Matrix::from_rows(x.algebra.field(), null).rank() };
    Ok(maps.len() - rank)
}

/// Whether the homology of `x` is concentrated in `position` and isomorphic to `m` there.
pub fn quasi_isomorphic_to_module(x: &GradedComplex, m: &GradedModule, position: i64) -> Result<bool> {
    for p in x.positions() {
        if p != position && !x.homology(p).is_zero() {
            return Ok(false);
        }
    }
    crate::module::is_isomorphic(&x.homology(position), m)
}

/// The cone of the identity of `X`: always acyclic.
pub fn identity_cone(x: &GradedComplex) -> GradedComplex {
    let field: Field = x.algebra.field();
    let one = field.one();
    let mut components = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let positions: BTreeSet<i64> = x.components.keys().flat_map(|&p| [p - 1, p]).collect();
    for &p in &positions {
        // Cone^p = X^{p+1} ⊕ X^p, d(a, b) = (-d a, a + d b)
        let (a, b) = (x.component(p + 1), x.component(p));
        components.insert(p, GradedModule::direct_sum(x.algebra.clone(), &[a, b]));
    }
    for &p in &positions {
        let (a, b) = (x.component(p + 1), x.component(p));
        let (a2, b2) = (x.component(p + 2), x.component(p + 1));
        let src = &components[&p];
        let tgt = components.get(&(p + 1)).cloned().unwrap_or_else(|| GradedModule::zero(x.algebra.clone()));
        let mut h = ModuleHom::zero(0);
        for &(v, d) in src.dims().keys() {
            let mut blk = Matrix::zeros(field, tgt.dim(v, d), src.dim(v, d));
            let da = x.diff(p + 1).block(&a, &a2, v, d).scale(&-one.clone());
            let id = Matrix::identity(field, a.dim(v, d));
            let db = x.diff(p).block(&b, &b2, v, d);
            let (ra, ca) = (a2.dim(v, d), a.dim(v, d));
            put(&mut blk, 0, 0, &da);
            put(&mut blk, ra, 0, &id);
            put(&mut blk, ra, ca, &db);
            h.set(v, d, blk);
        }
        diffs.insert(p, h);
    }
    GradedComplex::unchecked(x.algebra.clone(), components, diffs)
}

fn put(m: &mut Matrix, r0: usize, c0: usize, b: &Matrix) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(r0 + i, c0 + j, b.get(i, j).clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::algebra::GradedAlgebra;
    use crate::catalog;

    fn sl2() -> Alg {
        Arc::new(GradedAlgebra::build(&catalog::sl2(4)).unwrap())
    }

    /// `P(1)⟨-1⟩ → P(2) → L(2)`-style two-term complex `P(1)⟨-1⟩ → P(2)` via right multiplication by g.
    fn two_term(a: &Alg) -> GradedComplex {
        let p1 = GradedModule::projective(a.clone(), 0, -1);
        let p2 = GradedModule::projective(a.clone(), 1, 0);
        let d = hom_space(&p1, &p2, 0).unwrap().remove(0);
        let mut comps = BTreeMap::new();
        comps.insert(-1, p1);
        comps.insert(0, p2);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, d);
        GradedComplex::new(a.clone(), comps, diffs).unwrap()
    }

    #[test]
    fn homology_of_short_resolution() {
        let a = sl2();
        let c = two_term(&a);
        assert_eq!(c.homology_positions(), vec![0]);
        assert!(quasi_isomorphic_to_module(&c, &GradedModule::simple(a.clone(), 1, 0), 0).unwrap());
    }

    #[test]
    fn shifts_and_duals() {
        let a = sl2();
        let c = two_term(&a);
        let s = c.shift_position(1).shift_grading(2);
        assert_eq!(s.positions(), vec![-2, -1]);
        assert!(s.squares_to_zero());
        let op = Arc::new(a.opposite());
        let d = c.dualize_over(op.clone()).unwrap();
        assert_eq!(d.positions(), vec![0, 1]);
        assert!(d.squares_to_zero());
        let dd = d.dualize_over(a.clone()).unwrap();
        assert!(complexes_isomorphic(&dd, &c).unwrap());
    }

    #[test]
    fn chain_maps_and_homotopy() {
        let a = sl2();
        let c = two_term(&a);
        assert!(complexes_isomorphic(&c, &c).unwrap());
        let l = GradedComplex::single(GradedModule::simple(a.clone(), 1, 0), 0);
        assert_eq!(homotopy_hom_dim(&c, &l).unwrap(), 1);
        assert_eq!(homotopy_hom_dim(&c, &c).unwrap(), 1);
        let cone = identity_cone(&c);
        assert!(cone.squares_to_zero());
        assert!(cone.is_acyclic());
        assert_eq!(homotopy_hom_dim(&cone, &cone).unwrap(), 0);
    }
}
