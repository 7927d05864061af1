//! End-to-end runs of the `flp` binary against the bundled fixtures,
//! covering every subcommand and the 0/1/2 exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn flp<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flp")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = flp(args);
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
        String::from_utf8(output.stderr).expect("utf-8 stderr"),
    )
}

fn path_arg(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

#[test]
fn validate_accepts_scenarios_and_structure_files() {
    let (code, stdout, _) = run(&["validate", path_arg(&fixture("coordinate_line.json"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("ok: coordinate line"), "{stdout}");

    let (code, stdout, _) = run(&["validate", path_arg(&fixture("nondecomposable.json"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("ok: order-3 structure"), "{stdout}");
}

#[test]
fn validate_rejects_schema_violations_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "bad", "base_dim": 3, "arity": 1, "rank": 3}"#,
    )
    .unwrap();
    let (code, _, stderr) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("arity"), "{stderr}");

    let (code, _, stderr) = run(&["validate", "no-such-file.json"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("no-such-file.json"), "{stderr}");
}

#[test]
fn check_reports_pass_and_fail_with_matching_exit_codes() {
    let (code, stdout, _) = run(&["check", path_arg(&fixture("coordinate_line.json"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("condition1: pass"), "{stdout}");
    assert!(stdout.contains("overall: pass"), "{stdout}");

    let (code, stdout, _) = run(&["check", path_arg(&fixture("rank_two.json"))]);
    assert_eq!(code, 2);
    assert!(stdout.contains("rank: fail"), "{stdout}");
    assert!(stdout.contains("overall: fail"), "{stdout}");

    let (code, stdout, _) = run(&[
        "check",
        path_arg(&fixture("rank_two.json")),
        "--format",
        "json",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.contains("\"status\": \"fail\""), "{stdout}");
    assert!(stdout.contains("\"arguments\""), "{stdout}");
}

#[test]
fn selected_checks_without_their_data_exit_one() {
    let (code, _, stderr) = run(&[
        "check",
        path_arg(&fixture("diagonal.json")),
        "--checks",
        "bianchi",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("missing connection"), "{stderr}");
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = ["check", "--format", "json"];
    let scenario = fixture("coordinate_line.json");
    let full = [&args[..], &[path_arg(&scenario)]].concat();
    let first = flp(&full);
    let second = flp(&full);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn bracket_prints_canonical_sections() {
    let (code, stdout, _) = run(&[
        "bracket",
        path_arg(&fixture("permutation.json")),
        "--args",
        "e1,e2,e3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "e3\n");

    let (code, stdout, _) = run(&[
        "bracket",
        path_arg(&fixture("diagonal.json")),
        "--args",
        "e1,e2,x1*e3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "x1*e3\n");

    let (code, _, stderr) = run(&[
        "bracket",
        path_arg(&fixture("permutation.json")),
        "--args",
        "e1,e2",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("need 3 sections"), "{stderr}");
}

#[test]
fn curvature_of_the_permutation_connection_vanishes() {
    let (code, stdout, _) = run(&[
        "curvature",
        path_arg(&fixture("permutation.json")),
        "--x",
        "e1,e2",
        "--w",
        "e1,e2",
        "--z",
        "x1*e3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0\n");
}

#[test]
fn realize_writes_a_connection_scenario_that_reproduces_the_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("realized.json");
    let (code, _, stderr) = run(&[
        "realize",
        path_arg(&fixture("diagonal.json")),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");

    let (code, stdout, _) = run(&["check", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");

    let (code, stdout, _) = run(&["bracket", out.to_str().unwrap(), "--args", "e1,e2,e3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "e3\n");

    // Without -o the scenario JSON goes to stdout.
    let (code, stdout, _) = run(&["realize", path_arg(&fixture("diagonal.json"))]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"connection\""), "{stdout}");
}

#[test]
fn from_pair_reports_the_eigenvalue_and_writes_a_checkable_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pair.json");
    let (code, stdout, _) = run(&[
        "from-pair",
        path_arg(&fixture("pair_identity.json")),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("eigenvalue g = -2"), "{stdout}");

    let (code, stdout, _) = run(&["check", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn dualize_feeds_check_nambu() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("structure.json");
    let (code, _, stderr) = run(&[
        "dualize",
        path_arg(&fixture("coordinate_line.json")),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");

    let (code, stdout, _) = run(&["check-nambu", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("dufour_zung: pass"), "{stdout}");

    let (code, stdout, _) =
        run(&["check-nambu", out.to_str().unwrap(), "--fundamental"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("fundamental_identity: pass"), "{stdout}");
}

#[test]
fn check_nambu_flags_the_nondecomposable_structure() {
    let (code, stdout, _) = run(&[
        "check-nambu",
        path_arg(&fixture("nondecomposable.json")),
        "--format",
        "json",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.contains("\"id\": \"dufour_zung\""), "{stdout}");
    assert!(stdout.contains("\"status\": \"fail\""), "{stdout}");
    assert!(stdout.contains("iota_K"), "{stdout}");
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let (code, _, stderr) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!stderr.is_empty());

    let (code, _, stderr) = run(&["check"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("required"), "{stderr}");

    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Usage"), "{stdout}");

    let (code, _, _) = run(&["--version"]);
    assert_eq!(code, 0);
}
