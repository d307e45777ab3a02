//! Command-line surface: exit codes and written artifacts.

use std::path::Path;
use std::process::{Command, Output};

use majdim::{Digraph, Profile};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majdim"))
        .args(args)
        .env("MAJDIM_SAT_SOLVER", env!("CARGO_BIN_EXE_majdim-sat"))
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FIG1: &str = "5 10\n3 0\n1 3\n2 3\n4 0\n4 1\n2 4\n3 4\n0 1\n1 2\n0 2\n";
const NOT_TWO: &str = "6 8\n0 1\n1 2\n4 3\n3 2\n0 5\n4 5\n0 2\n4 2\n";

#[test]
fn check_yes_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.dg", FIG1);
    let w = dir.path().join("w.prof");
    let out = run(&["check", "--graph", &g, "-k", "3", "--witness", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let p = Profile::from_text(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(p.k(), 3);
    assert!(p.induces(&Digraph::from_text(FIG1).unwrap()));
    let v = run(&["verify", "--graph", &g, "--profile", w.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn check_no_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig4a.dg", NOT_TWO);
    assert_eq!(run(&["check", "--graph", &g, "-k", "2"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--graph", &g, "-k", "4"]).status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.dg", FIG1);
    assert_eq!(run(&["check", "--graph", &g, "-k", "2"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.dg", "3 2\n0 1\n");
    assert_eq!(run(&["check", "--graph", &bad, "-k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_solver_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.dg", FIG1);
    let out = Command::new(env!("CARGO_BIN_EXE_majdim"))
        .args(["check", "--graph", &g, "-k", "3"])
        .env("MAJDIM_SAT_SOLVER", dir.path().join("nope"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bounds_prints_table_values() {
    let out = run(&["bounds", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("18"));
}

#[test]
fn dim_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "fig1.dg", FIG1);
    let out = run(&["dim", "--graph", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 3);
}

#[test]
fn census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let out = run(&["census", "-n", "5", "-k", "3", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 12);
    assert!(text.lines().skip(1).all(|l| l.contains(",yes,")));
}

#[test]
fn gadget_and_transform_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    let ordered = dir.path().join("o.cnf");
    let t = run(&["transform", "--to", "ordered3", "--input", &cnf, "--out", ordered.to_str().unwrap()]);
    assert_eq!(t.status.code(), Some(0));
    let prefix = dir.path().join("banks");
    let g = run(&[
        "gadget",
        "--kind",
        "banks",
        "--input",
        ordered.to_str().unwrap(),
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(g.status.code(), Some(0), "{}", String::from_utf8_lossy(&g.stderr));
    let graph = dir.path().join("banks.dg");
    let prof = dir.path().join("banks.prof");
    assert!(dir.path().join("banks.trace.json").is_file());
    let v = run(&["verify", "--graph", graph.to_str().unwrap(), "--profile", prof.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let rp = dir.path().join("rp");
    let g = run(&["gadget", "--kind", "rp-tournament", "--input", &cnf, "--out-prefix", rp.to_str().unwrap()]);
    assert_eq!(g.status.code(), Some(0));
    let v = run(&[
        "verify",
        "--graph",
        dir.path().join("rp.wdg").to_str().unwrap(),
        "--profile",
        dir.path().join("rp.prof").to_str().unwrap(),
    ]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn sample_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let out = run(&[
            "sample",
            "--model",
            "mallows",
            "-n",
            "6",
            "--seed",
            "9",
            "--count",
            "2",
            "--out-dir",
            d.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |d: &Path| std::fs::read_to_string(d.join("sample_0001.prof")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_eq!(run(&["sample", "--model", "ic", "-n", "4", "--out-dir", a.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn preflib_input() {
    let dir = tempfile::tempdir().unwrap();
    let soc = write(dir.path(), "e.soc", "# NUMBER ALTERNATIVES: 3\n2: 1,2,3\n1: 3,2,1\n");
    let out = run(&["dim", "--preflib", &soc]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 1);
    let truncated = write(dir.path(), "t.soc", "# NUMBER ALTERNATIVES: 3\n2: 1,2\n");
    let out = run(&["dim", "--preflib", &truncated]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
