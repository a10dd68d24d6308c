//! Python bindings: presentations, algebras, resolutions, Koszulity checks and the duality functors.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use koszul_quiver::complex::GradedComplex;
use koszul_quiver::dual::{quadratic_dual, subquotient_duality_check};
use koszul_quiver::format::{parse_complex, parse_lc, parse_module, parse_presentation, read_header, write_complex, write_lc, write_module, write_presentation, Over};
use koszul_quiver::functors::{algebra_of, kfunctor, koszulity_check, kprime_modules, DualityPair};
use koszul_quiver::koszul_complex::{build_p_complex, KoszulComplex};
use koszul_quiver::linear::{epsilon, epsilon_inverse, lc_injective, lc_projective};
use koszul_quiver::projective::{ext_dimensions, resolve_simple};
use koszul_quiver::random::{algebra_pair, generate_random, random_basis_change, random_bimodule, RandomSpec};
use koszul_quiver::{Field, GradedAlgebra};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(s: &str) -> PyResult<Field> {
    s.parse().map_err(err)
}

/// A quiver with homogeneous relations and a degree bound.
#[pyclass(frozen, skip_from_py_object, module = "koszul_quiver")]
#[derive(Clone)]
struct Presentation {
    inner: koszul_quiver::Presentation,
}

impl Presentation {
    fn vertex(&self, label: &str) -> PyResult<usize> {
        self.inner.quiver().vertex(label).map_err(err)
    }

    fn pair(&self) -> PyResult<DualityPair> {
        DualityPair::new(&self.inner).map_err(err)
    }
}

#[pymethods]
impl Presentation {
    #[new]
    #[pyo3(signature = (text, field = "Q"))]
    fn new(text: &str, field: &str) -> PyResult<Self> {
        Ok(Presentation { inner: parse_presentation(text, self::field(field)?).map_err(err)? })
    }

    fn to_text(&self) -> String {
        write_presentation(&self.inner)
    }

    fn __repr__(&self) -> String {
        let q = self.inner.quiver();
        format!("Presentation({} vertices, {} arrows, {} relations, bound {})", q.num_vertices(), q.num_arrows(), self.inner.relations().len(), self.inner.bound())
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.quiver().vertices().to_vec()
    }

    /// `(name, source, target)` triples.
    #[getter]
    fn arrows(&self) -> Vec<(String, String, String)> {
        let q = self.inner.quiver();
        q.arrows().iter().map(|a| (a.name.clone(), q.label(a.source).to_string(), q.label(a.target).to_string())).collect()
    }

    #[getter]
    fn bound(&self) -> usize {
        self.inner.bound()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn is_quadratic(&self) -> bool {
        self.inner.is_quadratic()
    }

    fn with_bound(&self, bound: usize) -> PyResult<Presentation> {
        Ok(Presentation { inner: self.inner.with_bound(bound).map_err(err)? })
    }

    /// The quadratic dual presentation (of the quadratic part for other inputs).
    fn dual(&self) -> PyResult<Presentation> {
        Ok(Presentation { inner: quadratic_dual(&self.inner.quadratic_part()).map_err(err)?.0 })
    }

    fn algebra(&self) -> Algebra {
        Algebra { inner: Arc::new(algebra_of(&self.inner)) }
    }
}

/// The graded algebra of a presentation, up to its degree bound.
#[pyclass(frozen, module = "koszul_quiver")]
struct Algebra {
    inner: Arc<GradedAlgebra>,
}

#[pymethods]
impl Algebra {
    fn dims_by_degree(&self) -> Vec<usize> {
        self.inner.dims_by_degree()
    }

    /// Dimension of the degree-`d` part spanned by paths from `source` to `target`.
    fn dim(&self, d: usize, source: &str, target: &str) -> PyResult<usize> {
        let q = self.inner.quiver();
        Ok(self.inner.dim(d, q.vertex(source).map_err(err)?, q.vertex(target).map_err(err)?))
    }

    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }
}

/// Returns `(verdict, koszul, witness)` with `witness = (vertex, position, shift)` or `None`.
#[pyfunction]
#[pyo3(signature = (pres, bound, cross_check = false))]
fn koszul_check(pres: &Presentation, bound: usize, cross_check: bool) -> PyResult<(String, bool, Option<(String, i64, i64)>)> {
    let rep = koszulity_check(&pres.inner, bound, cross_check).map_err(err)?;
    if rep.cross_check == Some(false) {
        return Err(PyValueError::new_err("cross-check disagrees with the resolution verdict"));
    }
    let a = algebra_of(&pres.inner);
    let w = rep.witness.as_ref().map(|w| (a.label(w.vertex).to_string(), w.position, w.shift));
    Ok((rep.verdict(&a), rep.koszul, w))
}

/// Minimal resolution of `L(vertex)` as `[(position, [(vertex, shift), ...]), ...]`, position 0 first.
#[pyfunction]
fn resolve(pres: &Presentation, vertex: &str, positions: usize) -> PyResult<Vec<(i64, Vec<(String, i64)>)>> {
    let a = Arc::new(algebra_of(&pres.inner));
    let r = resolve_simple(&a, pres.vertex(vertex)?, positions);
    Ok(r.complex.terms().iter().rev().map(|(&p, t)| (p, t.iter().map(|s| (a.label(s.vertex).to_string(), s.shift)).collect())).collect())
}

/// `dim Ext^i(L(l), L(m)⟨j⟩)` as a list of `(i, j, dim)`.
#[pyfunction]
fn ext_table(pres: &Presentation, l: &str, m: &str, positions: usize) -> PyResult<Vec<(usize, i64, usize)>> {
    let a = Arc::new(algebra_of(&pres.inner));
    Ok(ext_dimensions(&a, pres.vertex(l)?, pres.vertex(m)?, positions).into_iter().map(|((i, j), n)| (i, j, n)).collect())
}

/// Linear-complex text of the injective hull (or projective cover) of a simple object.
#[pyfunction]
#[pyo3(signature = (pres, vertex, positions, projective = false))]
fn linear_complex(pres: &Presentation, vertex: &str, positions: usize, projective: bool) -> PyResult<String> {
    let a = Arc::new(algebra_of(&pres.inner));
    let v = pres.vertex(vertex)?;
    let lc = if projective {
        lc_projective(&a, &Arc::new(a.opposite()), v, positions)
    } else {
        lc_injective(&a, v, positions)
    };
    Ok(write_lc(&lc, "-"))
}

/// `ε`: linear-complex text to module text over the dual.
#[pyfunction]
fn eps(pres: &Presentation, lc_text: &str) -> PyResult<String> {
    let pair = pres.pair()?;
    let lc = parse_lc(lc_text, &pair.algebra).map_err(err)?;
    let src = read_header(lc_text).map_err(err)?.source;
    Ok(write_module(&epsilon(&lc, &pair.dual).map_err(err)?, Over::Dual, &src))
}

/// `ε⁻¹`: module text over the dual to linear-complex text.
#[pyfunction]
fn eps_inv(pres: &Presentation, module_text: &str) -> PyResult<String> {
    let pair = pres.pair()?;
    let m = parse_module(module_text, &pair.dual).map_err(err)?;
    let src = read_header(module_text).map_err(err)?.source;
    Ok(write_lc(&epsilon_inverse(&m, &pair.algebra).map_err(err)?, &src))
}

/// Applies `K` (`direction="k"`, input over the algebra) or `K′` (`"kprime"`, input over the dual)
/// to a module or complex file and returns complex text.
#[pyfunction]
fn kfunctor_text(pres: &Presentation, text: &str, direction: &str) -> PyResult<String> {
    let pair = pres.pair()?;
    let h = read_header(text).map_err(err)?;
    let (over, alg) = match direction {
        "k" => (Over::Algebra, &pair.algebra),
        "kprime" => (Over::Dual, &pair.dual),
        d => return Err(PyValueError::new_err(format!("direction must be `k` or `kprime`, got `{d}`"))),
    };
    if h.over != over {
        return Err(PyValueError::new_err("input lives over the wrong algebra for this direction"));
    }
    let x = if h.kind == "module" { GradedComplex::single(parse_module(text, alg).map_err(err)?, 0) } else { parse_complex(text, alg).map_err(err)? };
    let (out, out_over) = if direction == "k" {
        (kfunctor(&x, &pair.dual).map_err(err)?, Over::Dual)
    } else {
        (kprime_modules(&x, &pair.algebra).map_err(err)?, Over::Algebra)
    };
    Ok(write_complex(&out, out_over, &h.source))
}

/// Checks δ² = 0 on the Koszul bimodule complex of `pres` and on `random` random bimodule pairs.
#[pyfunction]
#[pyo3(signature = (pres, random = 0, seed = 0, top = 2))]
fn koszul_complex_check(pres: &Presentation, random: usize, seed: u64, top: usize) -> PyResult<bool> {
    let (c, d) = algebra_pair(&pres.inner).map_err(err)?;
    let mut ok = build_p_complex(&c, &d).map_err(err)?.squares_to_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let v = random_bimodule(&mut rng, &c, top).map_err(err)?;
        let w = random_bimodule(&mut rng, &d, top).map_err(err)?;
        let k = KoszulComplex::new(v, w).map_err(err)?;
        let g = random_basis_change(&mut rng, &c);
        ok &= k.squares_to_zero() && k.differential_in_basis(&g).map_err(err)? == k.differential();
    }
    Ok(ok)
}

#[pyfunction]
fn subquotient_check(pres: &Presentation, subset: Vec<String>) -> PyResult<bool> {
    let idx = subset.iter().map(|l| pres.vertex(l)).collect::<PyResult<Vec<_>>>()?;
    let rep = subquotient_duality_check(&pres.inner, &idx).map_err(err)?;
    Ok(rep.holds)
}

#[pyfunction]
#[pyo3(signature = (seed, max_vertices = 4, max_arrows = 6, density = None, bound = 4, field = "Q"))]
fn random_presentation(seed: u64, max_vertices: usize, max_arrows: usize, density: Option<f64>, bound: usize, field: &str) -> PyResult<Presentation> {
    let spec = RandomSpec { max_vertices, max_arrows, density, bound, field: self::field(field)?, seed };
    Ok(Presentation { inner: generate_random(&spec).map_err(err)? })
}

#[pymodule]
#[pyo3(name = "koszul_quiver")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(koszul_check, m)?)?;
    m.add_function(wrap_pyfunction!(resolve, m)?)?;
    m.add_function(wrap_pyfunction!(ext_table, m)?)?;
    m.add_function(wrap_pyfunction!(linear_complex, m)?)?;
    m.add_function(wrap_pyfunction!(eps, m)?)?;
    m.add_function(wrap_pyfunction!(eps_inv, m)?)?;
    m.add_function(wrap_pyfunction!(kfunctor_text, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_complex_check, m)?)?;
    m.add_function(wrap_pyfunction!(subquotient_check, m)?)?;
    m.add_function(wrap_pyfunction!(random_presentation, m)?)?;
    Ok(())
}
