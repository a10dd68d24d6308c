mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use koszul_quiver::complex::GradedComplex;
use koszul_quiver::dual::{double_dual_check, quadratic_dual, subquotient_duality_check};
use koszul_quiver::format::{
    parse_complex, parse_lc, parse_module, read_header, read_presentation, write_complex, write_lc, write_module, write_presentation, Header, Over,
};
use koszul_quiver::functors::{algebra_of, kfunctor, koszul_roundtrip_check, koszulity_check, kprime_modules, standard_corpus, DualityPair};
use koszul_quiver::koszul_complex::{build_p_complex, verify_i_v_decomposition, KoszulComplex};
use koszul_quiver::linear::{epsilon, epsilon_inverse, lc_injective, lc_projective, LinearComplex};
use koszul_quiver::projective::{ext_dimensions, resolve_simple, summand_name};
use koszul_quiver::random::{algebra_pair, generate_random, random_basis_change, random_bimodule, RandomSpec};
use koszul_quiver::{Field, GradedAlgebra, Presentation};

use report::{Format, Report};

const DEFAULT_WINDOW: usize = 4;

#[derive(Parser)]
#[command(name = "kq", version, about = "Quadratic duals, resolutions, linear complexes and Koszul duality for quiver algebras")]
struct Cli {
    /// Ground field when the input does not declare one: `Q` or `F<p>`.
    #[arg(long, env = "KQ_FIELD", default_value = "Q", global = true)]
    field: String,
    /// Seed for randomized steps; recorded in every report.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Degree bound of the algebra. For `koszul-check` and `ext-table` it is the number of positions checked.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Number of positions computed for resolutions and linear complexes.
    #[arg(long, global = true)]
    window: Option<usize>,
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    K,
    Kprime,
}

#[derive(Subcommand)]
enum Command {
    /// Prints the quadratic dual presentation.
    Dual { presentation: PathBuf },
    /// Minimal projective resolution of a simple module.
    Resolve {
        presentation: PathBuf,
        #[arg(long)]
        simple: String,
        #[arg(long)]
        positions: Option<usize>,
    },
    /// Diagonal Ext table of the simples, compared with the dimensions of the quadratic dual.
    ExtTable { presentation: PathBuf },
    /// Sends a linear complex of projectives to a module over the quadratic dual.
    Eps {
        #[arg(long)]
        lc: PathBuf,
    },
    /// Sends a module over the quadratic dual to a linear complex of projectives.
    EpsInv {
        #[arg(long)]
        module: PathBuf,
    },
    /// Injective hull of a simple object in the category of linear complexes.
    LcInjective { presentation: PathBuf, vertex: String },
    /// Projective cover of a simple object in the category of linear complexes.
    LcProjective { presentation: PathBuf, vertex: String },
    /// Applies K (module or complex over C) or K′ (over the dual).
    Kfunctor {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// Linearity of the minimal resolutions of all simples.
    KoszulCheck {
        presentation: PathBuf,
        /// Also checks K P(λ) ≃ L^!(λ) for every vertex.
        #[arg(long)]
        cross_check: bool,
    },
    /// K′K and KK′ round trips on simples, projectives, injectives and their shifts.
    Roundtrip {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Builds the Koszul bimodule complex and verifies δ² = 0.
    KoszulComplex {
        #[arg(long)]
        verify: PathBuf,
        /// Number of random bimodule pairs to check in addition.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Compares the dual of a full subcategory with the quotient of the dual.
    SubquotCheck {
        presentation: PathBuf,
        /// Comma-separated vertex labels.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
    /// Prints a random quadratic presentation.
    RandomGen {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_arrows: usize,
        /// Fraction of degree-two paths that become relations; random when omitted.
        #[arg(long)]
        density: Option<f64>,
    },
    /// Summary of a presentation and its algebra.
    Info { presentation: PathBuf },
}

struct Session {
    field: Field,
    seed: u64,
    bound: Option<usize>,
    window: Option<usize>,
}

impl Session {
    fn report(&self, command: &str, input: Option<&Path>) -> Report {
        let mut r = Report::new(command, self.seed, self.field.to_string());
        r.input = input.map(|p| p.display().to_string());
        r
    }

    fn read(&self, path: &Path) -> Result<Presentation> {
        read_presentation(path, self.field).with_context(|| format!("reading {}", path.display()))
    }

    fn presentation(&self, path: &Path) -> Result<Presentation> {
        let p = self.read(path)?;
        Ok(match self.bound {
            Some(b) => p.with_bound(b)?,
            None => p,
        })
    }

    fn window(&self) -> usize {
        self.window.unwrap_or(DEFAULT_WINDOW)
    }
}

/// A module, linear complex or complex file together with the presentation its header names.
struct Object {
    text: String,
    header: Header,
    pres: Presentation,
}

impl Object {
    fn load(s: &Session, path: &Path) -> Result<Object> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let header = read_header(&text).with_context(|| format!("in {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let pres = s.presentation(&base.join(&header.source))?;
        Ok(Object { text, header, pres })
    }

    fn expect(&self, kind: &[&str], over: Over) -> Result<()> {
        if !kind.contains(&self.header.kind.as_str()) {
            bail!("expected a {} file, found `{}`", kind.join(" or "), self.header.kind);
        }
        if self.header.over != over {
            bail!("expected a file `{}`, found `{}`", Header { kind: self.header.kind.clone(), over, source: self.header.source.clone() }.line(), self.header.line());
        }
        Ok(())
    }

    /// The object as a complex: a module becomes a complex concentrated in position 0.
    fn complex(&self, alg: &Arc<GradedAlgebra>) -> Result<GradedComplex> {
        Ok(match self.header.kind.as_str() {
            "module" => GradedComplex::single(parse_module(&self.text, alg)?, 0),
            _ => parse_complex(&self.text, alg)?,
        })
    }
}

fn vertex(p: &Presentation, label: &str) -> Result<usize> {
    Ok(p.quiver().vertex(label)?)
}

fn lc_lines(r: &mut Report, lc: &LinearComplex) {
    let a = lc.algebra();
    for p in lc.positions() {
        let parts: Vec<String> = (0..a.num_vertices())
            .filter(|&v| lc.multiplicity(p, v) > 0)
            .map(|v| format!("{}x{}", lc.multiplicity(p, v), a.label(v)))
            .collect();
        r.line(format!("position.{p}"), parts.join(" "));
    }
    r.line("nonzero_blocks", lc.blocks().values().filter(|m| !m.is_zero()).count());
}

fn complex_lines(r: &mut Report, x: &GradedComplex) {
    for (p, m) in x.components() {
        r.line(format!("component.{p}"), m.dims_string());
    }
    let hp: Vec<String> = x.homology_positions().iter().map(|p| p.to_string()).collect();
    r.line("homology_positions", hp.join(" "));
}

fn cmd_dual(s: &Session, path: &Path) -> Result<Report> {
    let pres = s.presentation(path)?;
    let mut r = s.report("dual", Some(path));
    r.bound = Some(pres.bound());
    let base = if pres.is_quadratic() {
        pres
    } else {
        r.line("warning", "not quadratic; dualizing the quadratic part");
        pres.quadratic_part()
    };
    let (d, _) = quadratic_dual(&base)?;
    r.body = Some(write_presentation(&d));
    Ok(r)
}

fn cmd_resolve(s: &Session, path: &Path, simple: &str, positions: Option<usize>) -> Result<Report> {
    let pres = s.presentation(path)?;
    let v = vertex(&pres, simple)?;
    let k = positions.unwrap_or(s.window());
    let a = Arc::new(algebra_of(&pres));
    let res = resolve_simple(&a, v, k);
    let mut r = s.report("resolve", Some(path));
    r.bound = Some(pres.bound());
    r.window = Some(k);
    r.line("simple", simple);
    for (p, t) in res.complex.terms().iter().rev() {
        let names: Vec<String> = t.iter().map(|x| summand_name(&a, 'P', x)).collect();
        r.line(format!("position.{p}"), names.join(" + "));
    }
    r.line("complete", res.complete);
    if let Some(t) = res.valid_through {
        r.line("valid_through_degree", t);
    }
    r.line("minimal", res.complex.is_minimal());
    r.verdict = Some(res.complex.to_string());
    Ok(r)
}

fn cmd_ext_table(s: &Session, path: &Path) -> Result<Report> {
    let base = s.read(path)?;
    let k = s.bound.unwrap_or(DEFAULT_WINDOW);
    let pres = base.with_bound(base.bound().max(k + 1))?;
    let a = Arc::new(algebra_of(&pres));
    let dual = GradedAlgebra::build(&quadratic_dual(&pres.quadratic_part())?.0)?;
    let mut r = s.report("ext-table", Some(path));
    r.bound = Some(k);
    let n = a.num_vertices();
    for l in 0..n {
        for m in 0..n {
            let ext = ext_dimensions(&a, l, m, k);
            for i in 0..=k {
                let e = ext.get(&(i, -(i as i64))).copied().unwrap_or(0);
                let d = dual.dim(i, m, l);
                r.line(format!("ext.{}.{}.{i}", a.label(l), a.label(m)), e);
                if e != d {
                    r.check(format!("dictionary.{}.{}.{i}", a.label(l), a.label(m)), false);
                    r.line(format!("dual_dim.{}.{}.{i}", a.label(m), a.label(l)), d);
                }
            }
            let off: usize = ext.iter().filter(|(&(i, j), _)| j != -(i as i64)).map(|(_, n)| n).sum();
            if off > 0 {
                r.line(format!("off_diagonal.{}.{}", a.label(l), a.label(m)), off);
            }
        }
    }
    r.verdict = Some(if r.ok { "dictionary holds".into() } else { "dictionary FAILS".into() });
    Ok(r)
}

fn cmd_eps(s: &Session, path: &Path) -> Result<Report> {
    let o = Object::load(s, path)?;
    o.expect(&["lc"], Over::Algebra)?;
    let pair = DualityPair::new(&o.pres)?;
    let lc = parse_lc(&o.text, &pair.algebra)?;
    let m = epsilon(&lc, &pair.dual)?;
    let mut r = s.report("eps", Some(path));
    r.bound = Some(o.pres.bound());
    r.line("dims", m.dims_string());
    r.body = Some(write_module(&m, Over::Dual, &o.header.source));
    Ok(r)
}

fn cmd_eps_inv(s: &Session, path: &Path) -> Result<Report> {
    let o = Object::load(s, path)?;
    o.expect(&["module"], Over::Dual)?;
    let pair = DualityPair::new(&o.pres)?;
    let m = parse_module(&o.text, &pair.dual)?;
    let lc = epsilon_inverse(&m, &pair.algebra)?;
    let mut r = s.report("eps-inv", Some(path));
    r.bound = Some(o.pres.bound());
    lc_lines(&mut r, &lc);
    r.check("squares_to_zero", lc.to_projective().squares_to_zero());
    r.body = Some(write_lc(&lc, &o.header.source));
    Ok(r)
}

fn cmd_lc(s: &Session, path: &Path, label: &str, injective: bool) -> Result<Report> {
    let pres = s.presentation(path)?;
    let v = vertex(&pres, label)?;
    let a = Arc::new(algebra_of(&pres));
    let k = s.window();
    let lc = if injective {
        lc_injective(&a, v, k)
    } else {
        let op = Arc::new(a.opposite());
        lc_projective(&a, &op, v, k)
    };
    let mut r = s.report(if injective { "lc-injective" } else { "lc-projective" }, Some(path));
    r.bound = Some(pres.bound());
    r.window = Some(k);
    lc_lines(&mut r, &lc);
    r.body = Some(write_lc(&lc, &path.display().to_string()));
    Ok(r)
}

fn cmd_kfunctor(s: &Session, path: &Path, direction: Direction) -> Result<Report> {
    let o = Object::load(s, path)?;
    let pair = DualityPair::new(&o.pres)?;
    let (out, over) = match direction {
        Direction::K => {
            o.expect(&["module", "complex"], Over::Algebra)?;
            (kfunctor(&o.complex(&pair.algebra)?, &pair.dual)?, Over::Dual)
        }
        Direction::Kprime => {
            o.expect(&["module", "complex"], Over::Dual)?;
            (kprime_modules(&o.complex(&pair.dual)?, &pair.algebra)?, Over::Algebra)
        }
    };
    let mut r = s.report("kfunctor", Some(path));
    r.bound = Some(o.pres.bound());
    r.line("direction", if direction == Direction::K { "K" } else { "K'" });
    complex_lines(&mut r, &out);
    r.check("squares_to_zero", out.squares_to_zero());
    r.body = Some(write_complex(&out, over, &o.header.source));
    Ok(r)
}

fn cmd_koszul_check(s: &Session, path: &Path, cross: bool) -> Result<Report> {
    let pres = s.read(path)?;
    let k = s.bound.unwrap_or(pres.bound());
    let rep = koszulity_check(&pres, k, cross)?;
    let mut r = s.report("koszul-check", Some(path));
    r.bound = Some(k);
    for (key, v) in &rep.lines {
        r.line(key.clone(), v);
    }
    if let Some(c) = rep.cross_check {
        r.check("cross_check", c);
    }
    let a = algebra_of(&pres);
    r.verdict = Some(rep.verdict(&a));
    Ok(r)
}

fn cmd_roundtrip(s: &Session, dir: &Path) -> Result<Report> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "quiver" || x == "module"))
        .collect();
    files.sort();
    let mut r = s.report("roundtrip", Some(dir));
    r.bound = s.bound;
    let (mut total, mut failed) = (0, 0);
    for f in &files {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let results = if f.extension().is_some_and(|x| x == "quiver") {
            let pres = s.presentation(f)?;
            if !pres.is_quadratic() {
                r.line(format!("{name}.skipped"), "not quadratic");
                continue;
            }
            let pair = DualityPair::new(&pres)?;
            if !pair.algebra.is_finite() || !pair.dual.is_finite() {
                r.line(format!("{name}.skipped"), "algebra or dual is truncated by the bound");
                continue;
            }
            let shifts = [0, 1];
            koszul_roundtrip_check(&pair, &standard_corpus(&pair.algebra, &shifts), &standard_corpus(&pair.dual, &shifts))?
        } else {
            let o = Object::load(s, f)?;
            let pair = DualityPair::new(&o.pres)?;
            let corpus = vec![(name.clone(), parse_module(&o.text, if o.header.over == Over::Algebra { &pair.algebra } else { &pair.dual })?)];
            match o.header.over {
                Over::Algebra => koszul_roundtrip_check(&pair, &corpus, &[])?,
                Over::Dual => koszul_roundtrip_check(&pair, &[], &corpus)?,
            }
        };
        for t in results {
            total += 1;
            failed += usize::from(!t.holds);
            r.check(format!("{name}.{}.{}", t.direction, t.name), t.holds);
        }
    }
    r.line("objects", total);
    r.line("failed", failed);
    r.verdict = Some(if failed == 0 { format!("ROUND TRIP holds on {total} objects") } else { format!("ROUND TRIP FAILS on {failed} of {total} objects") });
    Ok(r)
}

fn dims_map(m: &std::collections::BTreeMap<i64, usize>) -> String {
    m.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

fn cmd_koszul_complex(s: &Session, path: &Path, random: usize) -> Result<Report> {
    let pres = s.presentation(path)?;
    let (c, d) = algebra_pair(&pres)?;
    let mut r = s.report("koszul-complex", Some(path));
    r.bound = Some(pres.bound());
    let k = build_p_complex(&c, &d)?;
    r.line("dim", k.dim());
    r.line("nonzero_entries", k.differential().nonzero_entries());
    r.check("delta_squared_zero", k.squares_to_zero());
    r.check("bihomogeneous", k.is_bihomogeneous());
    r.check("bimodule_maps", k.bigraded_bimodule_check());
    r.line("dims_by_dual_degree", dims_map(&k.dims_by_dual_degree()));
    r.line("homology_by_dual_degree", dims_map(&k.homology_by_dual_degree()));
    r.check("i_v_decomposition", verify_i_v_decomposition(&pres)?);
    if random > 0 {
        let top = s.window.unwrap_or(2);
        r.window = Some(top);
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        for i in 0..random {
            let v = random_bimodule(&mut rng, &c, top)?;
            let w = random_bimodule(&mut rng, &d, top)?;
            let k = KoszulComplex::new(v, w)?;
            r.check(format!("random.{i}.delta_squared_zero"), k.squares_to_zero());
            let g = random_basis_change(&mut rng, &c);
            r.check(format!("random.{i}.basis_independent"), k.differential_in_basis(&g)? == k.differential());
        }
    }
    r.verdict = Some(if r.ok { "δ² = 0".into() } else { "VIOLATION".into() });
    Ok(r)
}

fn cmd_subquot(s: &Session, path: &Path, subset: &[String]) -> Result<Report> {
    let pres = s.presentation(path)?;
    let idx = subset.iter().map(|l| vertex(&pres, l.trim())).collect::<Result<Vec<_>>>()?;
    let rep = subquotient_duality_check(&pres, &idx)?;
    let mut r = s.report("subquot-check", Some(path));
    r.bound = Some(pres.bound());
    r.line("subset", subset.join(","));
    for (k, v) in &rep.lines {
        r.line(k.clone(), v);
    }
    r.verdict = Some(if rep.holds {
        "HOLDS".into()
    } else {
        r.ok = false;
        "FAILS".into()
    });
    Ok(r)
}

fn cmd_random_gen(s: &Session, max_vertices: usize, max_arrows: usize, density: Option<f64>) -> Result<Report> {
    if let Some(d) = density {
        if !(0.0..=1.0).contains(&d) {
            bail!("density must lie in [0, 1], got {d}");
        }
    }
    let spec = RandomSpec { max_vertices, max_arrows, density, bound: s.bound.unwrap_or(4), field: s.field, seed: s.seed };
    let p = generate_random(&spec)?;
    let mut r = s.report("random-gen", None);
    r.bound = Some(p.bound());
    r.body = Some(write_presentation(&p));
    Ok(r)
}

fn cmd_info(s: &Session, path: &Path) -> Result<Report> {
    let pres = s.presentation(path)?;
    let a = algebra_of(&pres);
    let q = pres.quiver();
    let mut r = s.report("info", Some(path));
    r.bound = Some(pres.bound());
    r.line("vertices", q.vertices().join(" "));
    r.line("arrows", q.arrows().iter().map(|x| format!("{}:{}->{}", x.name, q.label(x.source), q.label(x.target))).collect::<Vec<_>>().join(" "));
    r.line("relations", pres.relations().len());
    r.line("quadratic", pres.is_quadratic());
    r.line("monomial", pres.is_monomial());
    r.line("dims_by_degree", a.dims_by_degree().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
    r.line("finite", a.is_finite());
    if pres.is_quadratic() {
        let d = GradedAlgebra::build(&quadratic_dual(&pres)?.0)?;
        r.line("dual.dims_by_degree", d.dims_by_degree().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
        r.line("dual.finite", d.is_finite());
    }
    for (k, v) in double_dual_check(&pres).lines {
        r.line(format!("double_dual.{k}"), v);
    }
    Ok(r)
}

fn run(cli: &Cli) -> Result<Report> {
    let field: Field = cli.field.parse().with_context(|| format!("bad field `{}`", cli.field))?;
    let s = Session { field, seed: cli.seed, bound: cli.bound, window: cli.window };
    match &cli.command {
        Command::Dual { presentation } => cmd_dual(&s, presentation),
        Command::Resolve { presentation, simple, positions } => cmd_resolve(&s, presentation, simple, *positions),
        Command::ExtTable { presentation } => cmd_ext_table(&s, presentation),
        Command::Eps { lc } => cmd_eps(&s, lc),
        Command::EpsInv { module } => cmd_eps_inv(&s, module),
        Command::LcInjective { presentation, vertex } => cmd_lc(&s, presentation, vertex, true),
        Command::LcProjective { presentation, vertex } => cmd_lc(&s, presentation, vertex, false),
        Command::Kfunctor { input, direction } => cmd_kfunctor(&s, input, *direction),
        Command::KoszulCheck { presentation, cross_check } => cmd_koszul_check(&s, presentation, *cross_check),
        Command::Roundtrip { corpus } => cmd_roundtrip(&s, corpus),
        Command::KoszulComplex { verify, random } => cmd_koszul_complex(&s, verify, *random),
        Command::SubquotCheck { presentation, subset } => cmd_subquot(&s, presentation, subset),
        Command::RandomGen { max_vertices, max_arrows, density } => cmd_random_gen(&s, *max_vertices, *max_arrows, *density),
        Command::Info { presentation } => cmd_info(&s, presentation),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.render(cli.format));
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
