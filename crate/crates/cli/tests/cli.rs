use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn selfsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfsim")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("selfsim-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn witness_check_reports_non_contraction() {
    let out = selfsim(&["witness", "check", "--catalogue", "861", "--g", "c", "--v", "010"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fixes_v: true"));
    assert!(text.contains("verdict: NonContracting"));
}

#[test]
fn rejected_witness_exits_one() {
    let out = selfsim(&["witness", "check", "--catalogue", "861", "--g", "a", "--v", "010"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ep_act_prints_canonical_form() {
    let out = selfsim(&["ep-act", "--catalogue", "969", "--g", "c", "--word", "(101)^inf"]);
    assert_eq!(stdout(&out), "11(100)^inf\n");
    let out = selfsim(&["ep-act", "--catalogue", "861", "--g", "c^-1", "--word", "(1)^inf"]);
    assert_eq!(stdout(&out), "(10)^inf\n");
}

#[test]
fn section_equality() {
    let out = selfsim(&["equal", "--catalogue", "887", "--lhs", "section(b*c,1)", "--rhs", "c*a"]);
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn structured_output_is_json_and_deterministic() {
    let args = ["--format", "structured", "order", "--catalogue", "887", "--g", "a"];
    let first = stdout(&selfsim(&args));
    let value: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(value["g"], "a");
    assert_eq!(first, stdout(&selfsim(&args)));
}

#[test]
fn catalogue_verify_all_passes_and_covers_every_operation() {
    let out = selfsim(&["catalogue", "verify", "all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("10/10 suites pass"));
    let coverage = text.lines().find(|l| l.starts_with("coverage:")).unwrap();
    for op in [
        "act=",
        "act_ep=",
        "compose=",
        "equal=",
        "invert=",
        "is_identity=",
        "level_permutation=",
        "order_status=",
        "section=",
        "shift_equivalent=",
    ] {
        assert!(coverage.contains(op), "{op} missing from {coverage}");
    }
}

#[test]
fn corrupted_catalogue_dir_fails_verification() {
    let dir = scratch("corrupt");
    let text = selfsim_core_861().replace("state c: 0->0@b ; 1->1@a", "state c: 0->1@b ; 1->0@a");
    fs::write(dir.join("861.mealy"), text).unwrap();
    let out = selfsim(&["--catalogue-dir", dir.to_str().unwrap(), "catalogue", "verify", "861"]);
    assert_eq!(out.status.code(), Some(1));
}

fn selfsim_core_861() -> String {
    include_str!("../../core/catalogue/861.mealy").to_string()
}

#[test]
fn nucleus_of_odometer_file() {
    let dir = scratch("odometer");
    let path = dir.join("odometer.mealy");
    fs::write(&path, "alphabet: 2\nstate a: 0->1@e ; 1->0@a\nstate e: 0->0@e ; 1->1@e\n").unwrap();
    let out = selfsim(&["--format", "structured", "nucleus", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["status"], "Stabilized");
    assert_eq!(value["minimal_nucleus"].as_array().unwrap().len(), 3);
}

#[test]
fn divergence_csv() {
    let out = selfsim(&[
        "--format", "csv", "divergence", "--catalogue", "861", "--g", "c", "--v", "010", "--w", "10101010", "--n", "4",
        "--depth", "20",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,radius,corridor,measured\n1,11,4,4\n2,14,4,4\n3,17,4,4\n4,20,4,4\n");
}

#[test]
fn dot_written_to_file() {
    let dir = scratch("dot");
    let path = dir.join("861.dot");
    let out = selfsim(&["--format", "dot", "--out", path.to_str().unwrap(), "dot", "--catalogue", "861"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("digraph"));
}

#[test]
fn seeded_properties_are_reproducible() {
    let args = ["properties", "--catalogue", "2402", "--seed", "11", "--samples", "40"];
    let first = selfsim(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, selfsim(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(selfsim(&["info", "--catalogue", "1"]).status.code(), Some(3));
    assert_eq!(selfsim(&["act", "--catalogue", "861", "--g", "q", "--word", "0"]).status.code(), Some(4));
    assert_eq!(selfsim(&["info", "--catalogue", "861", "--file", "x"]).status.code(), Some(2));
    assert_eq!(selfsim(&["info"]).status.code(), Some(2));
    assert_eq!(selfsim(&["--format", "csv", "info", "--catalogue", "861"]).status.code(), Some(2));
    assert_eq!(selfsim(&["info", "--file", "/nonexistent/automaton"]).status.code(), Some(3));
}

#[test]
fn parse_errors_carry_position() {
    let out = selfsim(&["act", "--catalogue", "861", "--g", "a*", "--word", "0"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error:"), "{err}");
}
