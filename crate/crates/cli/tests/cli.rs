use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflexive")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn torsion_demo_contrasts_double_duals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["check", "demo:z-torsion", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&out);
    let job = r["jobs"].as_array().unwrap().iter().find(|j| j["statement"] == "reflexivity").unwrap();
    assert_eq!(job["verdict"], "holds");
    assert_eq!(job["groups"]["functorial[Z]"], serde_json::json!(["2"]));
    assert_eq!(job["groups"]["classical[Z]"], serde_json::json!([]));
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["cap"], 3);
}

#[test]
fn exit_status_per_verdict() {
    assert_eq!(code(&run(&["check", "demo:matrix-columns"])), 0);
    let o = run(&["check", "demo:small-diagram"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[fails]"));
    assert!(stdout(&o).contains("diagram_size"));
    let o = run(&["check", "demo:triangular", "--only", "bimodule-flat"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[inconclusive]"));
    assert_eq!(code(&run(&["check", "demo:triangular", "--only", "bimodule-flat", "--allow-inconclusive"])), 0);
    // fails stays a failure even when inconclusive is allowed
    assert_eq!(code(&run(&["check", "demo:small-diagram", "--allow-inconclusive"])), 1);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (p, jobs) in [(&a, "1"), (&b, "4")] {
        let o = run(&["check", "demo:triangular", "--allow-inconclusive", "--jobs", jobs, "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn caps_two_and_three_agree() {
    let dir = tempfile::tempdir().unwrap();
    for demo in ["z-torsion", "z-mixed", "triangular"] {
        let mut groups = Vec::new();
        for cap in ["2", "3"] {
            let out = dir.path().join(format!("{demo}-{cap}.json"));
            run(&["check", &format!("demo:{demo}"), "--cap", cap, "--out", out.to_str().unwrap()]);
            let r = report(&out);
            let g: Vec<Value> = r["jobs"].as_array().unwrap().iter().map(|j| j["groups"].clone()).collect();
            groups.push(g);
        }
        assert_eq!(groups[0], groups[1], "{demo}");
    }
}

#[test]
fn non_associative_ring_is_rejected_before_jobs() {
    let dir = tempfile::tempdir().unwrap();
    // e1*e1 = e0 but e1*e0 = 0: (e1 e1) e0 = e0 while e1 (e1 e0) = 0
    let f = write(
        &dir,
        "bad.inst",
        "[ring]\nrank = 2\norders = 0 0\nunit = 1 0\nmul = 0 0 0 1\nmul = 0 1 1 1\nmul = 1 1 0 1\n\n[jobs]\nrun = hypothesis\n",
    );
    let o = run(&["check", &f]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("(e1*e"), "{err}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("[ring]\ncatalog = integers\n[module \"M\"]\nside = up\ngens = 1\n", "line 4"),
        ("[ring]\ncatalog = integers\n\n[module \"M\"]\nside = left\ngens = 1\nrelation = 2 3\n", "line 7"),
        ("[ring]\ncatalog = integers\n[jobs]\nrun = hypothesis nosuch\n", "line 4"),
        ("[ring]\ncatalog = integers\n[jobs]\nrun = frobnicate\n", "line 4"),
        ("[ring]\ncatalog = nosuch(3)\n", "line 2"),
        ("[module \"M\"]\nside = left\n", "line 1"),
        ("[ring]\ncatalog = integers\nthis is not a pair\n", "line 3"),
    ];
    for (k, (text, want)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("e{k}.inst"), text);
        let o = run(&["check", &f]);
        assert_eq!(code(&o), 2, "case {k}");
        assert!(stderr(&o).contains(want), "case {k}: {}", stderr(&o));
    }
}

#[test]
fn search_commands() {
    let o = run(&["search", "--bounds", "commutative-only", "--quiet"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(" 0 failed"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = run(&["search", "--bounds", "rank=2", "--bounds", "orders=2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = report(&out);
    let n = r["summary"]["instances"].as_u64().unwrap() as usize;
    assert_eq!(r["records"].as_array().unwrap().len(), n);
    // one streamed line per instance plus the summary
    assert_eq!(stdout(&o).lines().count(), n + 1);

    let o = run(&["search", "--bounds", "gens=3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("hard limits"));
}

#[test]
fn catalog_commands() {
    let o = run(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for name in ["integers", "cyclic(n)", "matrix(n,m)", "triangular(n,m)", "z-torsion"] {
        assert!(s.contains(name), "{name}");
    }

    let o = run(&["catalog", "show", "matrix(2,2)"]);
    assert_eq!(code(&o), 0);
    let products: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with('e') && l.contains('*')).map(str::to_string).collect();
    assert_eq!(products.len(), 16);
    assert!(products.iter().all(|l| l.split('=').nth(1).unwrap().split_whitespace().count() == 4));

    let o = run(&["catalog", "show", "nosuch"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn catalog_instance_output_checks_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["catalog", "show", "cyclic(4)", "--instance"]);
    assert_eq!(code(&o), 0);
    let text = format!("{}\n[jobs]\nrun = hypothesis Z/2-right R\n", stdout(&o));
    let f = write(&dir, "c4.inst", &text);
    let o = run(&["check", &f]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
}
