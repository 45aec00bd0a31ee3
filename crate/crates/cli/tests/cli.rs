use std::process::{Command, Output};

use codiff_core::{catalog, Coderivation, DeformationState, Rational};
use serde_json::Value;

fn codiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn check_reports_codifferential() {
    let o = codiff(&["check", "psi(2,2;3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("codifferential: true"));
}

#[test]
fn check_failure_carries_certificate() {
    let o = codiff(&["check", "psi(3,3;3) + psi(1,3;1)"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("codifferential: false"));
    assert!(s.contains("[d,d] = 4*phi(1,3,3;1)"), "{s}");
}

#[test]
fn parse_error_is_usage_error_with_position() {
    let o = codiff(&["check", "psi(2,2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("byte 7"), "{err}");

    let o = codiff(&["--format", "json", "check", "psi(2,x;3)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].as_str().unwrap().contains("parse error"));
}

#[test]
fn unknown_label_is_usage_error() {
    let o = codiff(&["cohomology", "d_16"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_is_deterministic_and_marks_cells() {
    let a = codiff(&["table"]);
    let b = codiff(&["table"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    let d11 = s.lines().find(|l| l.starts_with("d_11 ")).unwrap();
    assert_eq!(d11.split_whitespace().nth(5), Some("2|1"), "{d11}");
    assert_eq!(d11.split_whitespace().nth(6), Some("MATCH"), "{d11}");
    assert!(s.contains("cells: 115, match: 110, documented: 5, mismatch: 0"));
}

#[test]
fn table_json_counts() {
    let o = codiff(&["--format", "json", "table"]);
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 23);
    assert_eq!(v["mismatches"], 0);
}

#[test]
fn bracket_json_round_trips() {
    let o = codiff(&["--format", "json", "bracket", "psi(2,2;3)", "psi(3,3;3)"]);
    assert_eq!(o.status.code(), Some(0));
    let c: Coderivation<Rational> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(c.to_string(), "phi(2,2,3;3) - phi(3,2,2;3)");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let arg = format!("@{}", path.display());
    let o = codiff(&["bracket", &arg, "psi(;3)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cohomology_report() {
    let o = codiff(&["cohomology", "d_11", "--max-degree", "2", "--basis"]);
    let s = stdout(&o);
    assert!(s.contains("H2 = 2|1"), "{s}");
    assert!(s.contains("    psi(2,2;3)"), "{s}");
    let o = codiff(&[
        "--format",
        "json",
        "cohomology",
        "d_14",
        "--max-degree",
        "2",
    ]);
    let v = json(&o);
    assert_eq!(v["h"][2], serde_json::json!({"even": 6, "odd": 3}));
}

#[test]
fn transform_pulls_back() {
    let o = codiff(&["transform", "[[1,0,0],[0,1,0],[0,0,-1]]", "d_2"]);
    assert_eq!(stdout(&o).trim(), "-psi(3,1;1) - psi(3,2;2) - psi(3,3;3)");
    let o = codiff(&["transform", "[[1,0,0],[0,0,1],[0,1,0]]", "d_2"]);
    assert_eq!(o.status.code(), Some(2), "parity-mixing matrix is rejected");
}

#[test]
fn equivalent_finds_witness() {
    let o = codiff(&[
        "--format",
        "json",
        "equivalent",
        "d_2",
        "-psi(3,1;1) - psi(3,2;2) - psi(3,3;3)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "equivalent");
    let o = codiff(&["equivalent", "d_2", "d_3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn deform_d14_is_versal() {
    let o = codiff(&["deform", "d_14", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("relations: none; infinitesimal deformation is versal"));
}

#[test]
fn deform_d13_planes_and_state_round_trip() {
    let basis =
        "psi(1,1;3); psi(2,1;3); psi(2,3;1) - psi(3,2;1); psi(2,3;2) - psi(3,2;2) - psi(3,3;3)";
    let o = codiff(&["deform", "d_13(0:0)", "--order", "3", "--basis", basis]);
    let s = stdout(&o);
    assert!(s.contains("t1 = 0, t2 = 0 (dimension 2)"), "{s}");
    assert!(s.contains("t3 = 0, t4 = 0 (dimension 2)"), "{s}");
    assert!(s.contains("jumps to d_12"), "{s}");

    let o = codiff(&[
        "--format",
        "json",
        "deform",
        "d_13(0:0)",
        "--order",
        "3",
        "--basis",
        basis,
        "--no-jumps",
    ]);
    let v = json(&o);
    let state: DeformationState = serde_json::from_value(v["state"].clone()).unwrap();
    assert_eq!(state.num_parameters(), 4);
    assert_eq!(state.last_correction, 3);
    assert_eq!(state.base, catalog::get_label("d_13(0:0)").unwrap().formula);
    assert_eq!(v["relations"]["components"].as_array().unwrap().len(), 2);
}

#[test]
fn deform_d11_jumps_to_d1() {
    let o = codiff(&["deform", "d_11"]);
    assert!(stdout(&o).contains("at (-1) on all parameters free: jumps to d_1"));
}

#[test]
fn extension_check_exit_codes() {
    let good = r#"{"m":[1,3],"w":[2],"lambda":"psi(2,3;1)-psi(3,2;1)","tau":"psi(2,2;3)"}"#;
    let o = codiff(&["extension-check", good]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("assembled: psi(2,2;3) + psi(2,3;1) - psi(3,2;1)"));

    let bad = r#"{"m":[1,3],"w":[2],"lambda":"psi(2,3;1)+psi(3,2;1)","tau":"psi(2,2;3)"}"#;
    let o = codiff(&["extension-check", bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cocycle: fails, defect 2*phi(2,2,2;1)"));

    let misplaced = r#"{"m":[1],"w":[2,3],"lambda":"psi(2,3;1)"}"#;
    assert_eq!(
        codiff(&["extension-check", misplaced]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_simple01_matches_all() {
    let o = codiff(&["--format", "json", "enumerate-simple01"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mut labels: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["match"].as_str().unwrap().to_string())
        .collect();
    labels.sort_by_key(|l| l[2..].parse::<u32>().unwrap());
    let expected: Vec<String> = (2..=11).map(|k| format!("d_{k}")).collect();
    assert_eq!(labels, expected);
}

#[test]
fn catalog_get_and_list() {
    let o = codiff(&["catalog", "get", "d_2", "--column-order", "parity-block"]);
    let s = stdout(&o);
    assert!(s.contains("[  0   0   0   0   0   0   1   0   0]"), "{s}");
    let o = codiff(&["catalog", "get", "d_2", "--column-order", "columnwise"]);
    assert_eq!(o.status.code(), Some(2));
    let o = codiff(&["--format", "json", "catalog", "list"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 23);
}

#[test]
fn catalog_export_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let o = codiff(&["catalog", "export", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let golden: Value = serde_json::from_str(include_str!("../../core/data/catalog.json")).unwrap();
    assert_eq!(written, golden);
}
