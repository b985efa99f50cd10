use std::process::{Command, Output};

const LOOPED_PATH: &str = "C;3;-2<=1,-2<=2,-2<=3,-3<=2,-1<=2";
const TRIANGLE: &str = "C;3;-1<=2,-2<=3,-1<=3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieposet")).args(args).env_clear().output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn index_both_methods() {
    let o = run(&["index", "--method", "both", "--poset", LOOPED_PATH]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("formula: 0") && s.contains("oracle: 0") && s.contains("seed 0"), "{s}");
}

#[test]
fn index_json() {
    let o = run(&["--format", "json", "--seed", "7", "index", "--poset", LOOPED_PATH]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["formula"], 0);
    assert_eq!(v["oracle"], 0);
    assert_eq!(v["seed"], 7);
}

#[test]
fn condition_one_is_an_input_error() {
    let o = run(&["validate", "--poset", "C;2;2<=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[Condition1Violation]"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = run(&["validate", "/nonexistent/poset.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("InputParseError"));
}

#[test]
fn spectrum_of_triangle() {
    let o = run(&["spectrum", "--poset", TRIANGLE]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("{0:3, 1:3}") && s.contains("binary=true"), "{s}");
}

#[test]
fn non_frobenius_is_a_computation_failure() {
    let o = run(&["frobenius", "--poset", "C;2;-2<=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[NotFrobenius]"), "{}", stderr(&o));
}

#[test]
fn formula_without_fallback_fails() {
    let higher = "C;3;-3<=-2,-2<=-1,-1<=1";
    assert_eq!(run(&["index", "--method", "formula", "--poset", higher]).status.code(), Some(1));
    let o = run(&["index", "--fallback", "oracle", "--poset", higher]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle: 0"));
}

#[test]
fn format_rejected_before_work() {
    let o = run(&["--format", "dot", "verify", "--corpus", "C4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn reduce_and_export() {
    let o = run(&["reduce", "--poset", LOOPED_PATH]);
    assert!(stdout(&o).contains("rank preserved: true"));
    let o = run(&["--format", "dot", "export", "--what", "relation-graph", "--poset", LOOPED_PATH]);
    assert!(stdout(&o).contains("2 -- 2;"));
}

#[test]
fn verify_writes_report() {
    let dir = std::env::temp_dir().join(format!("lieposet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["verify", "--corpus", "C2,D2", "--jobs", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["failures"].as_array().unwrap().is_empty());
}
