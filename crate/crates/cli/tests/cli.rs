use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn kq_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kq")).args(args).current_dir(dir).env_remove("KQ_FIELD").output().expect("run kq")
}

fn kq(args: &[&str]) -> Output {
    kq_in(&data(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or("").to_string()
}

#[test]
fn koszul_verdicts() {
    let o = kq(&["koszul-check", "--bound", "6", "sl2.quiver"]);
    assert!(o.status.success());
    assert_eq!(last_line(&o), "KOSZUL up to 6");
    let o = kq(&["koszul-check", "--bound", "3", "b3.quiver"]);
    assert!(o.status.success());
    assert_eq!(last_line(&o), "NOT KOSZUL, witness λ=1 position −2 shift −3");
    let o = kq(&["koszul-check", "--bound", "6", "b2.quiver"]);
    assert_eq!(last_line(&o), "KOSZUL up to 6");
}

#[test]
fn cross_check_on_sl2() {
    let o = kq(&["--format", "kv", "koszul-check", "--bound", "4", "--cross-check", "sl2.quiver"]);
    let out = stdout(&o);
    assert!(out.contains("cross_check = true\n"), "{out}");
    assert!(out.ends_with("status = ok\n"));
}

#[test]
fn dual_of_sl2_is_a_loadable_presentation() {
    let o = kq(&["dual", "sl2.quiver"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("arrow f* 2 1\n") && out.contains("arrow g* 1 2\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("relation")).collect::<Vec<_>>(), vec!["relation 1*g*∘f*"]);
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("sl2_dual.quiver");
    std::fs::write(&path, &out).unwrap();
    let back = Command::new(env!("CARGO_BIN_EXE_kq")).args(["dual", path.to_str().unwrap()]).output().unwrap();
    let rel: Vec<String> = stdout(&back).lines().filter(|l| l.starts_with("relation")).map(String::from).collect();
    assert_eq!(rel, vec!["relation 1*g∘f"]);
}

#[test]
fn reports_are_byte_stable_and_record_the_seed() {
    let a = kq(&["random-gen", "--seed", "17"]);
    let b = kq(&["random-gen", "--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().nth(1).unwrap().starts_with("# seed = 17, field = Q"));
    let c = kq(&["random-gen", "--seed", "18"]);
    assert_ne!(a.stdout, c.stdout);
    let k = kq(&["--format", "kv", "koszul-complex", "--verify", "sl2.quiver", "--random", "3", "--seed", "9"]);
    assert_eq!(k.stdout, kq(&["--format", "kv", "koszul-complex", "--verify", "sl2.quiver", "--random", "3", "--seed", "9"]).stdout);
    assert!(stdout(&k).contains("\nseed = 9\n"));
}

#[test]
fn field_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_kq")).args(["random-gen", "--density", "1"]).env("KQ_FIELD", "F5").output().unwrap();
    let out = stdout(&o);
    assert!(out.contains("field = F 5"), "{out}");
    assert!(out.contains("\nfield F 5\n"));
}

#[test]
fn kv_format_is_flat() {
    let o = kq(&["--format", "kv", "info", "sl2.quiver"]);
    for l in stdout(&o).lines() {
        assert!(l.split_once(" = ").is_some(), "not a key = value line: {l}");
    }
    assert!(stdout(&o).contains("dims_by_degree = 2 2 1 0 0 0 0\n"));
}

#[test]
fn eps_and_eps_inv_compose_to_the_identity() {
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("eps");
    std::fs::create_dir_all(&tmp).unwrap();
    std::fs::copy(data().join("sl2.quiver"), tmp.join("sl2.quiver")).unwrap();
    let lc = kq_in(&tmp, &["lc-injective", "sl2.quiver", "1"]);
    assert!(lc.status.success());
    let lc_text = stdout(&lc);
    std::fs::write(tmp.join("inj.lc"), &lc_text).unwrap();
    let m = kq_in(&tmp, &["eps", "--lc", "inj.lc"]);
    assert!(m.status.success(), "{}", String::from_utf8_lossy(&m.stderr));
    std::fs::write(tmp.join("inj.module"), stdout(&m)).unwrap();
    let back = kq_in(&tmp, &["eps-inv", "--module", "inj.module"]);
    assert!(back.status.success());
    let body = |s: &str| s.lines().filter(|l| l.starts_with("summand") || l.starts_with("block")).map(String::from).collect::<Vec<_>>();
    assert_eq!(body(&stdout(&back)), body(&lc_text));
    assert_eq!(body(&lc_text), vec!["summand -2 1 1", "summand -1 2 1", "summand 0 1 1", "block -2 g 1", "block -1 f 1"]);
}

#[test]
fn eps_inv_of_dual_projective_is_lc_projective() {
    let a = kq(&["eps-inv", "--module", "dual_projective_2.module"]);
    let b = kq(&["lc-projective", "sl2.quiver", "2"]);
    let body = |o: &Output| stdout(o).lines().filter(|l| l.starts_with("summand") || l.starts_with("block")).map(String::from).collect::<Vec<_>>();
    assert_eq!(body(&a), body(&b));
    assert_eq!(body(&a), vec!["summand 0 2 1", "summand 1 1 1", "block 0 f 1"]);
}

#[test]
fn kfunctor_of_a_simple_is_the_dual_injective() {
    let o = kq(&["kfunctor", "--input", "simple_2.module", "--direction", "k"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("complex over-dual sl2.quiver\ncomponent 0\ndim 1 -1 1\ndim 2 0 1\nmap g* -1 1\n"), "{out}");
    let wrong = kq(&["kfunctor", "--input", "simple_2.module", "--direction", "kprime"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn roundtrip_corpus_passes() {
    let o = kq(&["roundtrip", "--corpus", "."]);
    assert!(o.status.success());
    assert!(last_line(&o).starts_with("ROUND TRIP holds on"));
    assert!(stdout(&o).contains("b2.quiver.skipped"));
}

#[test]
fn ext_table_and_subquotients() {
    let o = kq(&["ext-table", "--bound", "4", "a4.quiver"]);
    assert!(o.status.success());
    assert_eq!(last_line(&o), "dictionary holds");
    let o = kq(&["subquot-check", "a4.quiver", "--subset", "2,3"]);
    assert!(o.status.success());
    assert_eq!(last_line(&o), "HOLDS");
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("bad.quiver");
    std::fs::write(&path, "vertex 1\narrow f 1\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_kq")).args(["info", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
