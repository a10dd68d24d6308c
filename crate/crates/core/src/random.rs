//! Seeded random quadratic presentations, bimodules and arrow-basis changes for property tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::error::Result;
use crate::field::Field;
use crate::koszul_complex::{BasisChange, Bimodule};
use crate::matrix::Matrix;
use crate::module::Alg;
use crate::quiver::{Presentation, Quiver, Relation};

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub max_vertices: usize,
    pub max_arrows: usize,
    /// Fraction of the degree-two paths in each vertex pair that become relations.
    /// `None` draws a density per presentation.
    pub density: Option<f64>,
    pub bound: usize,
    pub field: Field,
    pub seed: u64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { max_vertices: 4, max_arrows: 6, density: None, bound: 4, field: Field::Rational, seed: 0 }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize, range: i64) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, field.int(rng.gen_range(-range..=range)));
        }
    }
    m
}

/// A relation space of dimension exactly `r` inside `field^f`, as the kernel of a random
/// `(f - r) × f` matrix.
fn random_subspace(rng: &mut ChaCha8Rng, field: Field, f: usize, r: usize) -> Matrix {
    if r == f {
        return Matrix::identity(field, f);
    }
    loop {
        let k = random_matrix(rng, field, f - r, f, 3).kernel_basis();
        if k.cols() == r {
            return k;
        }
    }
}

/// Draws a quadratic presentation with the given seed.
pub fn generate_random(spec: &RandomSpec) -> Result<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    random_presentation(&mut rng, spec)
}

pub fn random_presentation(rng: &mut ChaCha8Rng, spec: &RandomSpec) -> Result<Presentation> {
    let n = rng.gen_range(1..=spec.max_vertices.max(1));
    let mut q = Quiver::new();
    for i in 1..=n {
        q.add_vertex(&i.to_string())?;
    }
    let arrows = rng.gen_range(0..=spec.max_arrows);
    for i in 0..arrows {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        q.add_arrow(&format!("a{}", i + 1), s, t)?;
    }
    let density = spec.density.unwrap_or_else(|| rng.gen_range(0.0..=1.0)).clamp(0.0, 1.0);
    let field = spec.field;
    let mut relations = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let paths = q.paths(2, s, t);
            let f = paths.len();
            let r = (density * f as f64).round() as usize;
            if r == 0 {
                continue;
            }
            let basis = random_subspace(rng, field, f, r);
            for c in basis.columns() {
                let terms = c.into_iter().zip(&paths).filter(|(x, _)| !x.is_zero()).map(|(x, p)| (x, p.arrows.clone())).collect();
                relations.push(Relation { source: s, target: t, degree: 2, terms });
            }
        }
    }
    Presentation::new(field, q, relations, spec.bound.max(2))
}

/// A random bimodule over `a`, truncated at degree `top`: the regular bimodule,
/// a free one `C e_λ ⊗ e_μ C`, or a sum of two.
pub fn random_bimodule(rng: &mut ChaCha8Rng, a: &Alg, top: usize) -> Result<Bimodule> {
    let n = a.num_vertices();
    let pick = |rng: &mut ChaCha8Rng| -> Result<Bimodule> {
        if rng.gen_bool(0.3) {
            Bimodule::regular_truncated(a, top)
        } else {
            Bimodule::free(a, rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..=top))
        }
    };
    if rng.gen_bool(0.3) {
        let x = pick(rng)?;
        let y = pick(rng)?;
        Bimodule::direct_sum(&[x, y])
    } else {
        pick(rng)
    }
}

/// An invertible random change of arrow basis in every vertex pair.
pub fn random_basis_change(rng: &mut ChaCha8Rng, a: &GradedAlgebra) -> BasisChange {
    let q = a.quiver();
    let mut out = BasisChange::new();
    for s in 0..q.num_vertices() {
        for t in 0..q.num_vertices() {
            let k = q.arrows_between(s, t).len();
            if k == 0 {
                continue;
            }
            let g = loop {
                let g = random_matrix(rng, a.field(), k, k, 4);
                if g.is_invertible() {
                    break g;
                }
            };
            out.insert((s, t), g);
        }
    }
    out
}

/// A random presentation with a vertex subset whose full subcategory is generated in degree one.
pub fn random_subquotient_pair(rng: &mut ChaCha8Rng, spec: &RandomSpec) -> Result<(Presentation, Vec<usize>)> {
    loop {
        let p = random_presentation(rng, spec)?;
        let n = p.quiver().num_vertices();
        let subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        if subset.is_empty() {
            continue;
        }
        let c = GradedAlgebra::build(&p)?;
        if c.full_subcategory(&subset)?.generated_in_degree_one() {
            return Ok((p, subset));
        }
    }
}

/// Builds the algebra and its quadratic dual as shared handles.
pub fn algebra_pair(p: &Presentation) -> Result<(Alg, Alg)> {
    let c = Arc::new(GradedAlgebra::build(p)?);
    let d = Arc::new(GradedAlgebra::build(&crate::dual::quadratic_dual(p)?.0)?);
    Ok((c, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_presentation;

    #[test]
    fn extremes_of_density() {
        for seed in 0..10 {
            let none = generate_random(&RandomSpec { density: Some(0.0), seed, ..Default::default() }).unwrap();
            assert!(none.relations().is_empty());
            let all = generate_random(&RandomSpec { density: Some(1.0), seed, ..Default::default() }).unwrap();
            let q = all.quiver();
            let paths: usize = (0..q.num_vertices()).flat_map(|s| (0..q.num_vertices()).map(move |t| (s, t))).map(|(s, t)| q.paths(2, s, t).len()).sum();
            let rank: usize = (0..q.num_vertices()).flat_map(|s| (0..q.num_vertices()).map(move |t| (s, t))).map(|(s, t)| all.relation_matrix(2, s, t).rank()).sum();
            assert_eq!(rank, paths);
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let spec = RandomSpec { seed: 42, ..Default::default() };
        assert_eq!(write_presentation(&generate_random(&spec).unwrap()), write_presentation(&generate_random(&spec).unwrap()));
    }

    #[test]
    fn respects_shape_limits() {
        for seed in 0..20 {
            let p = generate_random(&RandomSpec { seed, max_vertices: 3, max_arrows: 4, ..Default::default() }).unwrap();
            assert!(p.quiver().num_vertices() <= 3 && p.quiver().num_arrows() <= 4);
            assert!(p.is_quadratic());
        }
    }
}
