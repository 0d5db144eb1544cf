use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tabipol"))
        .args(args)
        .env_remove("TABIPOL_MAX_DEPTH")
        .env_remove("TABIPOL_MAX_NODES")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// The JSON report printed after the primary output.
fn report(o: &Output) -> serde_json::Value {
    let out = stdout(o);
    let at = if out.starts_with('{') { 0 } else { out.find("\n{\n").expect("report follows output") + 1 };
    serde_json::from_str(&out[at..]).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const FIG4_RIGHT: &str = "tableau.\n*\n  p\n    ~p {-> 1}\n    q\n      ~q {-> 2}\n";

#[test]
fn prove_contradiction() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.tableau");
    let o = run(&["prove", "--input", &sample("contradiction.p"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = tabipol::tableau::parse_tableau(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.size(), 2);
}

#[test]
fn prove_satisfiable_gives_up() {
    let o = run(&["prove", "--input", &sample("satisfiable.p"), "--max-depth", "4"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn prove_depth_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tabipol"))
        .args(["prove", "--input", &sample("satisfiable.p")])
        .env("TABIPOL_MAX_DEPTH", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("depth limit 3"), "{}", stderr(&o));
}

#[test]
fn prove_malformed_reports_location() {
    let o = run(&["prove", "--input", &sample("malformed.p")]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("malformed.p:1:20"), "{}", stderr(&o));
}

#[test]
fn prove_clause_list() {
    let o = run(&["prove", "--input", &sample("clauses.cl"), "--format", "clauses"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("tableau.\n"));
}

#[test]
fn interpolate_example_2() {
    let o = run(&["interpolate", "--input", &sample("example2.p")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("! [V1] : q(V1)"));
    let report = report(&o);
    assert_eq!(report["interpolant"], "! [V1] : q(V1)");
    assert_eq!(report["command"], "interpolate");
}

#[test]
fn interpolate_example_3_verified() {
    let o = run(&["interpolate", "--f", &sample("example3_f.p"), "--g", &sample("example3_g.p"), "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("! [V1] : ? [V2] : ! [V3] : p(V1,V2,V3)"));
}

#[test]
fn interpolate_horn() {
    let o = run(&["interpolate", "--f", &sample("horn_f.p"), "--g", &sample("horn_g.p"), "--require", "horn"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let h = tabipol::syntax::parse_formula(stdout(&o).lines().next().unwrap()).unwrap();
    assert!(tabipol::restriction::is_horn(&h));
    let report = report(&o);
    assert_eq!(report["verdicts"]["horn"], "pass");
    let (before, after) = (report["size_before"].as_f64().unwrap(), report["size_after"].as_f64().unwrap());
    assert_eq!(report["size_ratio"].as_f64().unwrap(), after / before);
}

#[test]
fn interpolate_is_deterministic() {
    let args = ["interpolate", "--f", &sample("horn_f.p"), "--g", &sample("horn_g.p"), "--require", "horn"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn interpolate_unsupported_requirement() {
    // ∀x q(x) is not u-range-restricted, so no u-rr interpolant is promised.
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.p");
    std::fs::write(&g, "fof(g, axiom, q(a)).\n").unwrap();
    let o = run(&["interpolate", "--f", &sample("forall_q.p"), "--g", g.to_str().unwrap(), "--require", "u-rr"]);
    assert_eq!(code(&o), 2, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn interpolate_not_entailed() {
    let o = run(&["interpolate", "--input", &sample("satisfiable.p"), "--max-depth", "4"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn hyper_fig4() {
    let o = run(&["hyper", "--proof", &sample("fig4.tableau")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), FIG4_RIGHT);
}

#[test]
fn hyper_fig5_proof() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.tableau");
    let o = run(&["hyper", "--proof", &sample("fig5.proof"), "--stats", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), FIG4_RIGHT);
    let report = report(&o);
    assert_eq!((report["size_before"].as_u64(), report["size_after"].as_u64()), (Some(5), Some(3)));
    assert_eq!(report["size_ratio"].as_f64(), Some(0.6));
    assert!(report.get("timings_ms").is_none());
}

#[test]
fn hyper_timings_on_request() {
    let o = run(&["hyper", "--proof", &sample("fig5.proof"), "--stats", "--timings"]);
    let report = report(&o);
    assert!(report["timings_ms"]["hyper"].is_number());
}

#[test]
fn hyper_oversized() {
    // A long chain of resolution steps whose tree unfolding doubles per step.
    let mut doc = String::from("proof.\n1 input p0 .\n");
    let n = 24;
    for i in 0..n {
        doc += &format!("{} input ~p{i} | p{} .\n", i + 2, i + 1);
    }
    doc += &format!("{} input ~p{n} .\n", n + 2);
    let mut last = 1;
    for i in 0..n {
        let id = n + 3 + i;
        doc += &format!("{id} resolve({last}, {}, p{i}) p{} .\n", i + 2, i + 1);
        last = id;
    }
    doc += &format!("{} resolve({last}, {}, p{n}) $false .\n", 2 * n + 3, n + 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.proof");
    std::fs::write(&path, doc).unwrap();
    let o = run(&["hyper", "--proof", path.to_str().unwrap(), "--max-nodes", "20"]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
}

#[test]
fn hyper_trace_goes_to_stderr() {
    let o = run(&["hyper", "--proof", &sample("fig5.proof"), "--trace"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stderr(&o).lines().filter(|l| l.starts_with("round ")).count(), 2);
    assert_eq!(stdout(&o), FIG4_RIGHT);
}

#[test]
fn check_properties() {
    let o = run(&["check", "--input", &sample("tgd.p"), "--property", "vgt-rr"]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", "--input", &sample("forall_q.p"), "--property", "u-rr"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("witness"), "{}", stdout(&o));
    let o = run(&["check", "--input", &sample("horn_f.p"), "--property", "horn"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let ground = dir.path().join("ground.p");
    std::fs::write(&ground, "fof(h, axiom, (~e(a) | ~s(a,b) | n(b)) & e(a)).\n").unwrap();
    let o = run(&["check", "--input", ground.to_str().unwrap(), "--property", "horn-like"]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", "--input", &sample("malformed.p"), "--property", "horn"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn check_vx_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vx.p");
    std::fs::write(&path, "fof(f, axiom, p(X) & r(X)).\nfof(g, conjecture, p(X)).\n").unwrap();
    let o = run(&["check", "--input", path.to_str().unwrap(), "--property", "vx-preconditions", "--free-vars", "X"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_example_2() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.p");
    std::fs::write(&h, "fof(h, axiom, ! [X] : q(X)).\n").unwrap();
    let o = run(&["verify", "--input", &sample("example2.p"), "--h", h.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    std::fs::write(&h, "fof(h, axiom, ! [X] : p(X)).\n").unwrap();
    let o = run(&["verify", "--input", &sample("example2.p"), "--h", h.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn define_returns_query_over_its_own_predicates() {
    let o = run(&["define", "--input", &sample("define.p"), "--targets", "m"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "? [V1] : m(V1)");
    let o = run(&["define", "--input", &sample("define.p"), "--targets", "p,s"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "? [V1] : (p(V1) & s(V1))");
}

#[test]
fn import_cut_normal_form() {
    let o = run(&["import", "--proof", &sample("fig5.proof")]);
    assert_eq!(code(&o), 0);
    let t = tabipol::tableau::parse_tableau(&stdout(&o)).unwrap();
    assert_eq!(t.size(), 5);
}

#[test]
fn stats_over_samples() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/samples/proofs");
    let o = run(&["stats", "--dir", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("fig5 ") && l.ends_with("0.60")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("median")));
    let o = run(&["stats", "--dir", dir.to_str().unwrap(), "--json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["summary"]["converted"], report["summary"]["proofs"]);
    assert!(report["summary"]["ratio"]["median"].as_f64().unwrap() <= 1.0);
    assert_eq!(o.stdout, run(&["stats", "--dir", dir.to_str().unwrap(), "--json"]).stdout);
}
