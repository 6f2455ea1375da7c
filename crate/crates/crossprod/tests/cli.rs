use std::path::PathBuf;
use std::process::Command;

use crossprod::fixtures::{self, INSTANCE_B};
use crossprod::format::{strong_doc, WitnessDoc, Over, WITNESS_SCHEMA};
use crossprod::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("crossprod").chain(args.iter().copied()))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, value: &serde_json::Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path.display().to_string()
}

#[test]
fn validate_instance_b_passes() {
    let (code, out, _) = cli(&["validate", "--fixture", &fixture("instance-b.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS  relation (2)"));
    assert!(out.contains("all 64 triples"));
    assert!(out.contains("(seed 0)"));
}

#[test]
fn perturbed_fixture_names_the_failing_relation() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: serde_json::Value = serde_json::from_str(INSTANCE_B).unwrap();
    // b_1 = 3 + √2 is moved by sigma_1.
    v["cocycle"]["b"][0][1] = "1".into();
    let path = write_temp(&dir, "perturbed.json", &v);
    let (code, out, _) = cli(&["validate", "--fixture", &path]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL  relation (2)"), "{out}");
    assert!(out.contains("sigma_1(b_1) != N_1(u_11) b_1"), "{out}");

    let mut v: serde_json::Value = serde_json::from_str(INSTANCE_B).unwrap();
    v["cocycle"]["u"][0][1][1] = "1".into();
    let path = write_temp(&dir, "perturbed-u.json", &v);
    let (code, out, _) = cli(&["validate", "--fixture", &path]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL  relation (1)"), "{out}");
}

#[test]
fn unreadable_or_malformed_input_exits_2() {
    let (code, _, err) = cli(&["validate", "--fixture", "/nonexistent/instance.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.json", &serde_json::json!({"schema": "crossprod/fixture-v1"}));
    assert_eq!(cli(&["analyze", "--fixture", &path]).0, 2);
    assert_eq!(cli(&["analyze"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
}

#[test]
fn analyze_instance_b_reports_the_stored_witness_round_trip() {
    let (code, out, _) = cli(&["analyze", "--fixture", &fixture("instance-b.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains(
        "stored: strongly degenerate; witness m=(1,1), l=√2, x=(1, √2); central element √2*z1z2, square = 30"
    ));
    assert!(out.contains("search: strongly degenerate; witness m=(0,1), l=1"));
    assert!(out.contains("√2*s1s2 is 2-power central"));
}

#[test]
fn analyze_trivial_cocycle_finds_the_trivial_witness() {
    let (code, out, _) = cli(&["analyze", "--fixture", &fixture("instance-b-trivial.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("search: strongly degenerate; witness m=(0,1), l=1, x=(1, 1)"), "{out}");
}

#[test]
fn budget_zero_exhausts_with_the_disclaimer() {
    let (code, out, _) = cli(&["analyze", "--fixture", &fixture("instance-b3.json"), "--budget-l", "0"]);
    assert_eq!(code, 3);
    assert!(out.contains("NONE  search"));
    assert!(out.contains("this is not a proof of non-degeneracy"));
    assert!(out.contains("outcome: exhausted (unknown) (exit 3)"));
}

#[test]
fn rescaled_instance_exhausts_the_default_candidates() {
    let (code, out, _) = cli(&["analyze", "--fixture", &fixture("instance-b-rescaled.json")]);
    assert_eq!(code, 3);
    // The stored witness still verifies: exhaustion is not refutation.
    assert!(out.contains("stored: strongly degenerate"));
}

#[test]
fn descend_instance_b_through_the_cube_root() {
    let (code, out, _) = cli(&[
        "descend",
        "--fixture",
        &fixture("instance-b.json"),
        "--composite",
        &fixture("composite-b-cuberoot2.json"),
        "-e",
        "2",
    ]);
    assert_eq!(code, 0, "{out}");
    for stage in ["stage 1: extend", "stage 2: check", "stage 3: norm-descend", "stage 4: bezout", "stage 5: power"] {
        assert!(out.contains(stage), "{stage}");
    }
    assert!(out.contains("PASS  witness for u^3  m=(1,1), l=2*√2, x=(1, 2*√2)"), "{out}");
    assert!(out.contains("3*1 + 2*(-1) = 1"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn descend_with_a_witness_file_over_ke() {
    let (code, out, _) = cli(&["descend", "--witness", &fixture("witness-b-cuberoot2.json"), "-e", "2"]);
    assert_eq!(code, 0, "{out}");
    // N(1 + c) = 3 multiplies in.
    assert!(out.contains("witness for u^3  m=(1,1), l=6*√2, x=(3, 6*√2)"), "{out}");
}

#[test]
fn descend_along_the_trivial_composite() {
    let (code, out, _) = cli(&[
        "descend",
        "--fixture",
        &fixture("instance-b.json"),
        "--composite",
        &fixture("composite-b-trivial.json"),
        "--witness",
        &fixture("witness-b.json"),
        "-e",
        "2",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("witness for u^1  m=(1,1), l=√2, x=(1, √2)"), "{out}");
}

#[test]
fn invalid_witness_aborts_at_stage_2() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures::fixture(INSTANCE_B);
    let mut w = fx.strong[0].clone();
    w.l = fx.ext.from_int(1);
    let doc = WitnessDoc {
        schema: WITNESS_SCHEMA.into(),
        over: Over::K,
        fixture: serde_json::from_str(INSTANCE_B).unwrap(),
        composite: None,
        strong: strong_doc(&w),
    };
    let path = write_temp(&dir, "bad-witness.json", &serde_json::to_value(&doc).unwrap());
    let (code, out, _) = cli(&["descend", "--witness", &path, "--composite", &fixture("composite-b-cuberoot2.json"), "-e", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("aborted at stage 2 (check)"), "{out}");
    assert!(!out.contains("stage 3"));
}

#[test]
fn descend_refuses_mismatched_inputs() {
    let (code, _, err) = cli(&[
        "descend",
        "--fixture",
        &fixture("instance-b3.json"),
        "--witness",
        &fixture("witness-b.json"),
        "--composite",
        &fixture("composite-b3-sqrt5.json"),
        "-e",
        "3",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("written for INSTANCE-B"));
    // Composite of the wrong base: a mathematical rejection at stage 1.
    let (code, out, _) = cli(&[
        "descend",
        "--fixture",
        &fixture("instance-b3.json"),
        "--composite",
        &fixture("composite-b-cuberoot2.json"),
        "-e",
        "3",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("aborted at stage 1 (extend)"));
    // e sharing a factor with t.
    let (code, out, _) = cli(&[
        "descend",
        "--fixture",
        &fixture("instance-b.json"),
        "--composite",
        &fixture("composite-b-cuberoot2.json"),
        "-e",
        "6",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("aborted at stage 4 (bezout)"));
}

#[test]
fn graded_audits() {
    let (code, out, _) = cli(&["graded", "--fixture", &fixture("instance-b.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[D:F] = 16, residue degree 4, index 4"));
    assert!(out.contains("value (1/2,1/2) outside Gamma_F"));
    let (code, _, _) = cli(&["graded", "--fixture", &fixture("instance-b3.json")]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&["graded", "--fixture", &fixture("q2-rank1.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("G must be noncyclic"));
}

#[test]
fn reports_are_deterministic_and_carry_the_seed() {
    let args = ["validate", "--fixture", &fixture("instance-b3.json"), "--seed", "42", "--format", "report"];
    let first = cli(&args);
    let second = cli(&args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first.1).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["command"], "validate");
    let other = cli(&["validate", "--fixture", &fixture("instance-b3.json"), "--seed", "43", "--format", "report"]);
    assert_eq!(other.0, 0);
}

#[test]
fn demo_runs_both_instances_end_to_end() {
    let (code, out, _) = cli(&["demo"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("outcome: pass (exit 0)").count(), 8);
    assert!(out.contains("== descend INSTANCE-B3 over B3-SQRT5"));
    let (code, json, _) = cli(&["demo", "--format", "report"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_crossprod");
    let status = Command::new(bin).args(["validate", "--fixture", &fixture("instance-b.json")]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).contains("outcome: pass"));
    let status = Command::new(bin).args(["validate", "--fixture", "missing.json"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("cannot read"));
    let status = Command::new(bin)
        .args(["analyze", "--fixture", &fixture("instance-b3.json"), "--budget-l", "0"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
}
