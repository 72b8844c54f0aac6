//! End-to-end tests of the command-line interface.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfgk"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_passes_on_builtin() {
    let (code, stdout, _) = run(&["check", "wzz-3-5a"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("confluence: ok"));
    assert!(stdout.contains("hopf axioms: ok"));
}

#[test]
fn check_fails_on_non_confluent_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(hopfgk::dsl::JACOBI_VIOLATING.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let (code, stdout, _) = run(&["check", &path]);
    assert_eq!(code, 1);
    assert!(stdout.contains("confluence: FAILED"));
    assert!(stdout.contains("overlap z y x"));
}

#[test]
fn parse_error_exits_1_with_diagnostics() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"hopf \"broken\"\ngen x deg 1\ngen y deg 1\nrel [x,w] = 0\n")
        .unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let (code, _, stderr) = run(&["check", &path]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown identifier `w`"));
    assert!(stderr.contains("missing relation for pair (x, y)"));
}

#[test]
fn resource_cap_exits_2() {
    let (code, _, stderr) = bin()
        .env("HOPFGK_MAX_WORDS", "10")
        .args(["primitives", "wzz-3-5a", "--bound", "6"])
        .output()
        .map(|out| {
            (
                out.status.code().unwrap_or(-1),
                String::from_utf8(out.stdout).unwrap(),
                String::from_utf8(out.stderr).unwrap(),
            )
        })
        .unwrap();
    assert_eq!(code, 2);
    assert!(stderr.contains("error"), "{stderr}");
}

#[test]
fn missing_input_exits_2() {
    let (code, _, stderr) = run(&["gk", "no-such-presentation"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));
    assert!(stderr.contains("wzz-3-5a"), "hint lists built-ins: {stderr}");
}

#[test]
fn gk_reports_exact_dimension() {
    let (code, stdout, _) = run(&["gk", "wzz-3-5a", "--max-degree", "12"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("exactGK = 4"), "{stdout}");
    assert!(stdout.contains("certificate = IteratedExtension"));
}

#[test]
fn gk_on_non_confluent_input_exits_1() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(hopfgk::dsl::JACOBI_VIOLATING.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let (code, stdout, _) = run(&["gk", &path]);
    assert_eq!(code, 1);
    assert!(stdout.contains("exactGK unavailable"));
}

#[test]
fn primitives_prints_dimensions() {
    let (code, stdout, _) = run(&["primitives", "wzz-3-5a", "--bound", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("dim P = 3"));
    assert!(stdout.contains("dim P2 = 4"));
}

#[test]
fn normal_names_the_witness() {
    let (code, stdout, _) = run(&["normal", "wzz-3-5a"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("U_H is not normal"));
    assert!(stdout.contains("[z]"), "witness names the actor z: {stdout}");
    assert!(stdout.contains("(x1)"), "witness names the target x1: {stdout}");
}

#[test]
fn normal_accepts_explicit_subalgebra() {
    let (code, stdout, _) = run(&["normal", "wzz-3-5a", "--sub", "x1,x2,z"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("is normal"));
}

#[test]
fn normal_rejects_unknown_generator() {
    let (code, _, stderr) = run(&["normal", "wzz-3-5a", "--sub", "x1,q"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown generator `q`"));
}

#[test]
fn ace_subcommand_reports_both_sides() {
    let (code, stdout, _) = run(&["ace", "wzz-3-5a", "--sub", "x1,x2,z"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("almost centralizing extension of x1,x2,z: yes"));
    assert!(stdout.contains("agree: true"));

    let (code, stdout, _) = run(&["ace", "wzz-3-5a"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("almost centralizing extension of U_H: no"));
    assert!(stdout.contains("condition 1"));
}

#[test]
fn lemmas_pass_on_central_extension() {
    let (code, stdout, _) = run(&["lemmas", "central-acc"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("bracket criterion: holds"));
    assert!(stdout.contains("agree=true"));
}

#[test]
fn report_is_deterministic_and_valid_json() {
    let (code, first, _) = run(&["report", "wzz-3-5a"]);
    assert_eq!(code, 0);
    let (_, second, _) = run(&["report", "wzz-3-5a"]);
    assert_eq!(first, second, "report output must be byte-stable");

    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["growthFunction"]["exactGk"], 4);
    assert_eq!(v["checkNormal"]["isNormal"], false);
}

#[test]
fn report_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let (code, stdout, _) = run(&["report", "wzz-3-5a", "-o", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let (_, direct, _) = run(&["report", "wzz-3-5a"]);
    assert_eq!(text, direct);
}

#[test]
fn report_accepts_file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(hopfgk::dsl::CENTRAL_ACC.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let (code, stdout, _) = run(&["report", &path]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["name"], "central-acc");
    assert_eq!(v["theorem00Check"]["agree"], true);
}
