use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("rbundle-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_rbundle"))
        .args(args)
        .output()
        .unwrap();
    let json = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (
        status.code().unwrap(),
        json,
        String::from_utf8(stderr).unwrap(),
    )
}

fn run_file(cmd: &str, path: &Path) -> (i32, Value, String) {
    run(&[cmd, path.to_str().unwrap()])
}

const NODAL_A: &str = r#""field": "Q", "A": {"z1": [0,1,0], "z2": [0,0,1], "q1": [0,0,1,0,0,1], "q2": [0,1,0,0,0,0]}"#;

fn dir(xi0: i64, eta0: i64, xi00: i64, eta00: i64) -> String {
    format!(
        r#"{{"l1": [{xi0},0,0], "l2": [{eta0},0,0], "c1": [{xi00},0,0,0,0,0], "c2": [{eta00},0,0,0,0,0]}}"#
    )
}

#[test]
fn analyze_nodal() {
    let (code, out, _) = run_file("analyze", &fixture("nodal"));
    assert_eq!(code, 0);
    assert_eq!(out["in_X8"], true);
    let b = &out["B"];
    assert_eq!(b["support"]["boundary_class"], "TwoPoints");
    assert_eq!(b["support"]["conic_class"], "Smooth");
    assert_eq!(b["support"]["q"], serde_json::json!(["1", "0", "0"]));
    assert_eq!(b["hilbert"]["D0"], "4m + 1");
    assert_eq!(b["hilbert"]["D1"], "2m + 2");
    assert_eq!(b["hilbert"]["h0"], 1);
    assert_eq!(b["orbits"]["stabilizer_class"], "OrderTwo");
}

#[test]
fn analyze_moves_a_general_matrix_to_special_form() {
    // the nodal matrix after x -> (x1, x0, x2), so p(A) = [0:1:0]
    let text = format!(
        r#"{{"field": "Q", "A": {{"z1": [1,0,0], "z2": [0,0,1], "q1": [0,0,0,0,1,1], "q2": [0,1,0,0,0,0]}}, "B": {}}}"#,
        r#"{"l1": [0,0,0], "l2": [0,0,0], "c1": [0,0,0,1,0,0], "c2": [0,0,0,0,0,0]}"#
    );
    let (code, out, err) = run_file("analyze", &scratch("moved", &text));
    assert_eq!(code, 0, "{err}");
    assert_eq!(out["p_A"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(out["B"]["support"]["boundary_class"], "TwoPoints");
}

#[test]
fn analyze_report_echoes_a_reparsable_input() {
    let (_, out, _) = run_file("analyze", &fixture("cusp"));
    let echo = scratch("echo", &out["input"].to_string());
    let (code, again, _) = run_file("analyze", &echo);
    assert_eq!(code, 0);
    assert_eq!(again, out);
}

#[test]
fn malformed_input_names_the_field() {
    let text = format!(r#"{{{NODAL_A}, "B": {}}}"#, dir(0, 0, 1, 0))
        .replace("[0,0,1,0,0,1]", "[0,0,1,0,0]");
    let (code, out, err) = run_file("analyze", &scratch("short", &text));
    assert_eq!(code, 1);
    assert!(err.contains("A.q1"), "{err}");
    assert!(out["error"].as_str().unwrap().contains("A.q1"));

    let (code, _, err) = run_file("analyze", &scratch("syntax", "{\"field\": "));
    assert_eq!(code, 1, "{err}");

    let text = format!(r#"{{{NODAL_A}, "B": {}}}"#, dir(0, 0, 1, 0)).replace("\"Q\"", "\"R\"");
    let (code, _, err) = run_file("analyze", &scratch("field", &text));
    assert_eq!(code, 1);
    assert!(err.contains("field"), "{err}");

    let (code, _, _) = run_file("analyze", &PathBuf::from("/nonexistent/input.json"));
    assert_eq!(code, 1);
}

#[test]
fn precondition_failures_exit_two() {
    let outside = r#"{"field": "Q", "A": {"z1": [0,1,0], "z2": [0,0,1], "q1": [1,0,0,0,0,1], "q2": [0,1,0,0,0,0]}}"#;
    let (code, out, err) = run_file("analyze", &scratch("outside", outside));
    assert_eq!(code, 2);
    assert_eq!(out["in_X8"], false);
    assert!(err.contains("X8"), "{err}");

    let tangent = format!(r#"{{{NODAL_A}, "B": {}}}"#, dir(1, 0, 0, 1));
    let (code, _, err) = run_file("analyze", &scratch("tangent", &tangent));
    assert_eq!(code, 2);
    assert!(err.contains("tangent"), "{err}");
}

#[test]
fn equiv_finds_the_scale_factor() {
    // B2 = 3 B + (xi0 = 1, eta00 = 1), and (xi0, eta00) = (1, 1) is tangent at the nodal matrix
    let text = format!(
        r#"{{{NODAL_A}, "B": {}, "B2": {}}}"#,
        dir(0, 0, 1, 1),
        dir(1, 0, 3, 4)
    );
    let (code, out, err) = run_file("equiv", &scratch("equiv", &text));
    assert_eq!(code, 0, "{err}");
    assert_eq!(out["equivalent"], true);
    assert_eq!(out["alpha"], "3");

    let (code, out, _) = run_file("equiv", &fixture("nodal"));
    assert_eq!(code, 0);
    assert_eq!(out["equivalent"], false);

    let text = format!(r#"{{{NODAL_A}, "B": {}}}"#, dir(0, 0, 1, 0));
    let (code, _, err) = run_file("equiv", &scratch("noB2", &text));
    assert_eq!(code, 1);
    assert!(err.contains("B2"), "{err}");
}

#[test]
fn hilbert_rows() {
    let path = fixture("cusp");
    let (code, out, _) = run(&["hilbert", path.to_str().unwrap(), "--max-m", "4"]);
    assert_eq!(code, 0);
    let rows = out["rows"].as_array().unwrap();
    let d0: Vec<u64> = rows.iter().map(|r| r["D0"].as_u64().unwrap()).collect();
    let d1: Vec<u64> = rows.iter().map(|r| r["D1"].as_u64().unwrap()).collect();
    let plane: Vec<u64> = rows.iter().map(|r| r["plane"].as_u64().unwrap()).collect();
    assert_eq!(d0, [1, 5, 9, 13, 17]);
    assert_eq!(d1, [2, 4, 6, 8, 10]);
    assert_eq!(plane, [1, 4, 7, 10, 13]);
    assert_eq!(out["h0"], 1);

    let (code, _, _) = run(&["hilbert", path.to_str().unwrap(), "--max-m", "99"]);
    assert_eq!(code, 1);
}

#[test]
fn cohomology_table_has_no_mismatch() {
    let (code, out, _) = run(&["cohomology-table"]);
    assert_eq!(code, 0);
    assert_eq!(out["rows"].as_array().unwrap().len(), 11);
    assert_eq!(out["mismatches"], 0);
}

#[test]
fn verify_small_run() {
    let (code, out, err) = run(&[
        "--verbose",
        "verify",
        "--prime",
        "5",
        "--samples",
        "30",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out["singular"]["failures"], 0);
    assert!(err.contains("singular"));
    let (code, out, _) = run(&[
        "verify",
        "--prime",
        "7",
        "--samples",
        "10",
        "--oracle",
        "equiv",
    ]);
    assert_eq!(code, 0);
    assert!(out["singular"].is_null());
    let (code, _, _) = run(&["verify", "--prime", "9", "--samples", "10"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["verify", "--prime", "5"]);
    assert_ne!(code, 0);
}

#[test]
fn examples_table_and_dump() {
    let (code, out, _) = run(&["examples"]);
    assert_eq!(code, 0);
    assert_eq!(out["examples"].as_array().unwrap().len(), 11);
    let (code, dumped, _) = run(&["examples", "--dump", "triple-line"]);
    assert_eq!(code, 0);
    assert_eq!(dumped["name"], "triple-line");
    let (code, _, _) = run(&["examples", "--dump", "quartic"]);
    assert_eq!(code, 1);
}

#[test]
fn summary_only_under_verbose() {
    let (_, _, quiet) = run(&["examples"]);
    assert!(quiet.is_empty());
    let (_, _, loud) = run(&["-v", "examples"]);
    assert!(loud.contains("nodal"));
}
