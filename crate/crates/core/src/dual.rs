//! Quadratic duals and the compatibility of duality with subquotient categories.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::quiver::{Path, Presentation, Quiver, Relation};

/// The pairing between degree-two paths of `C` and of `C^!`.
///
/// Arrow `a: λ→μ` of `C` corresponds to `a*: μ→λ` of `C^!` (same index), and
/// `⟨a*∘b*, b∘a⟩ = 1` with all other pairings zero.
#[derive(Clone, Debug)]
pub struct DualPairing {
    names: Vec<(String, String)>,
}

impl DualPairing {
    pub fn dual_arrow_name(&self, a: usize) -> &str {
        &self.names[a].1
    }

    pub fn arrow_names(&self) -> &[(String, String)] {
        &self.names
    }

    /// Pairing of a dual path (over the dual quiver) with a path of the original quiver.
    pub fn pair(&self, field: crate::field::Field, dual_path: &Path, path: &Path) -> Scalar {
        if dual_path.source == path.target && dual_path.target == path.source && dual_path.reversed().arrows == path.arrows {
            field.one()
        } else {
            field.zero()
        }
    }
}

/// Appends `*`, or removes a trailing one, so that dualizing twice restores names.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// The quadratic dual: reversed quiver with relation space `R^⊥` in every vertex pair.
pub fn quadratic_dual(pres: &Presentation) -> Result<(Presentation, DualPairing)> {
    if !pres.is_quadratic() {
        return Err(Error::NonQuadratic("the dual is defined for quadratic presentations".into()));
    }
    let q = pres.quiver();
    let mut dq = Quiver::new();
    for v in q.vertices() {
        dq.add_vertex(v)?;
    }
    let mut names = Vec::new();
    for a in q.arrows() {
        let n = dual_name(&a.name);
        dq.add_arrow(&n, a.target, a.source)?;
        names.push((a.name.clone(), n));
    }
    let field = pres.field();
    let mut relations = Vec::new();
    for s in 0..q.num_vertices() {
        for t in 0..q.num_vertices() {
            let paths = q.paths(2, s, t);
            if paths.is_empty() {
                continue;
            }
            // under the pairing, the dual path paired with paths[k] is its reversal
            let r = pres.relation_matrix(2, s, t);
            let perp = r.kernel_basis();
            for c in perp.columns() {
                let terms = c
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| {
                        let mut rev = paths[k].arrows.clone();
                        rev.reverse();
                        (x.clone(), rev)
                    })
                    .collect();
                relations.push(Relation { source: t, target: s, degree: 2, terms });
            }
        }
    }
    let dual = Presentation::new(field, dq, relations, pres.bound())?;
    Ok((dual, DualPairing { names }))
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub holds: bool,
    pub lines: Vec<(String, String)>,
}

impl CheckReport {
    fn push(&mut self, k: &str, v: impl ToString) {
        self.lines.push((k.to_string(), v.to_string()));
    }
}

/// Whether `(C^!)^!` equals `C` under `a** = a`. Non-quadratic input reports on its quadratic part.
pub fn double_dual_check(pres: &Presentation) -> CheckReport {
    let mut rep = CheckReport { holds: false, lines: Vec::new() };
    let base = if pres.is_quadratic() {
        pres.clone()
    } else {
        rep.push("warning", "not quadratic; using the quadratic part");
        pres.quadratic_part()
    };
    let (d, _) = quadratic_dual(&base).expect("quadratic");
    let (dd, _) = quadratic_dual(&d).expect("quadratic");
    let same = dd.same_algebra(&base);
    rep.push("dual_relations", d.relations().len());
    rep.push("double_dual_relations", dd.relations().len());
    rep.push("double_dual_equals_quadratic_part", same);
    if pres.is_quadratic() {
        rep.holds = same;
    } else {
        let orig = GradedAlgebra::from_relations(pres);
        let back = GradedAlgebra::from_relations(&dd);
        let same_dims = orig.dims_by_degree() == back.dims_by_degree();
        rep.push("original_dims", format!("{:?}", orig.dims_by_degree()));
        rep.push("double_dual_dims", format!("{:?}", back.dims_by_degree()));
        rep.push("double_dual_equals_original", same_dims);
        rep.holds = same && same_dims;
    }
    rep
}

/// Compares `(C_Λ)^!`, built from the presentation induced on the full subcategory,
/// with the quotient category `_Λ(C^!)`: dimensions and ranks of all multiplication maps.
/// The dual only sees degrees one and two, so a full subcategory that is not generated in
/// degree one is compared through the quadratic algebra its degree-one part generates.
pub fn subquotient_duality_check(pres: &Presentation, subset: &[usize]) -> Result<CheckReport> {
    let mut rep = CheckReport { holds: false, lines: Vec::new() };
    let c = GradedAlgebra::build(pres)?;
    let sub = c.full_subcategory(subset)?;
    rep.push("subcategory_generated_in_degree_one", sub.generated_in_degree_one());
    let induced = sub.induced_quadratic_presentation()?;
    let left = GradedAlgebra::build(&quadratic_dual(&induced)?.0)?;
    let right = GradedAlgebra::build(&quadratic_dual(pres)?.0)?.quotient_category(subset)?;
    rep.push("dual_of_subcategory_dims", format!("{:?}", left.dims_by_degree()));
    rep.push("quotient_of_dual_dims", format!("{:?}", right.dims_by_degree()));
    let n = left.num_vertices();
    let bound = left.bound();
    let mut ok = true;
    for d in 0..=bound {
        for s in 0..n {
            for t in 0..n {
                if left.dim(d, s, t) != right.dim(d, s, t) {
                    ok = false;
                    rep.push("mismatch", format!("dim in degree {d} from {} to {}", left.label(s), left.label(t)));
                }
            }
        }
    }
    if ok {
        'ranks: for i in 1..bound {
            for j in 1..=bound - i {
                for s in 0..n {
                    for m in 0..n {
                        for t in 0..n {
                            let a = left.multiplication_matrix(i, j, s, m, t).rank();
                            let b = right.multiplication_matrix(i, j, s, m, t).rank();
                            if a != b {
                                ok = false;
                                rep.push("mismatch", format!("multiplication rank in degrees ({i},{j}) through {}", left.label(m)));
                                break 'ranks;
                            }
                        }
                    }
                }
            }
        }
    }
    rep.holds = ok;
    rep.push("verdict", if ok { "match" } else { "mismatch" });
    Ok(rep)
}
