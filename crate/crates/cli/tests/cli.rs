use std::path::PathBuf;
use std::process::{Command, Output};

use heis_core::harmonic::span_equal;
use heis_core::{parse_poly, Polynomial, Signature};
use serde_json::Value;

fn heis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heis"))
        .args(args)
        .env_remove("HEIS_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn ok(args: &[&str]) -> String {
    let out = heis(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("valid json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("heis-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn h1(items: &[&str]) -> Vec<Polynomial> {
    let sig = Signature::heisenberg(1);
    items.iter().map(|s| parse_poly(s, &sig).unwrap()).collect()
}

#[test]
fn basis_degree_two() {
    let text = ok(&["basis", "--group", "h1", "--degree", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(span_equal(&h1(&lines), &h1(&["t", "x*y", "x^2-y^2"])));
}

#[test]
fn triangular_basis_matches_generic_span() {
    for m in ["3", "6"] {
        let generic = ok(&["basis", "--degree", m]);
        let tri = json(&["basis", "--degree", m, "--method", "triangular", "--format", "json"]);
        assert_eq!(tri["normalization"], "triangular");
        let tri: Vec<String> = tri["elements"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        let tri: Vec<&str> = tri.iter().map(String::as_str).collect();
        assert!(span_equal(&h1(&tri), &h1(&generic.lines().collect::<Vec<_>>())));
    }
}

#[test]
fn dims_for_h2() {
    let v = json(&["dims", "--group", "h2", "--max-degree", "4", "--format", "json"]);
    let row = &v["rows"][2];
    assert_eq!(row["m"], 2);
    assert_eq!(row["dim_h"], 10);
    assert_eq!(row["closed_form"], 10);
    let csv = ok(&["dims", "--group", "h2", "--max-degree", "4", "--format", "csv"]);
    assert_eq!(csv.lines().nth(3), Some("2,11,10,10,10,true,true"));
}

#[test]
fn dims_from_spec_file() {
    let dir = scratch("spec");
    let path = dir.join("r2.json");
    std::fs::write(
        &path,
        r#"{"name":"r2","variables":[{"name":"u","weight":1},{"name":"v","weight":1}],
            "fields":[["1","0"],["0","1"]]}"#,
    )
    .unwrap();
    let v = json(&["dims", "--group", path.to_str().unwrap(), "--max-degree", "3", "--format", "json"]);
    let dims: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["dim_h"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 2, 2, 2]);
    assert!(v["rows"][0]["closed_form"].is_null());
}

#[test]
fn decompose_worked_example() {
    let text = ok(&["decompose", "--poly", "x^2+y^2"]);
    assert!(text.starts_with("h = -4*t\nq = 1\n"));
    let v = json(&["decompose", "--poly", "x^2+y^2", "--format", "json"]);
    assert_eq!(v["h"], "-4*t");
    assert_eq!(v["q"], "1");
    let chain = json(&["decompose", "--poly", "x^2+y^2", "--full", "--format", "json"]);
    let hs: Vec<&str> = chain["chain"].as_array().unwrap().iter().map(|c| c["h"].as_str().unwrap()).collect();
    assert_eq!(hs, ["-4*t", "1"]);
}

#[test]
fn gram_json_schema_and_determinism() {
    let args = ["gram", "--max-degree", "3", "--method", "quadrature", "--weight", "horizontal", "--format", "json"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    let pair = &v["pairs"][0];
    for key in ["deg_i", "idx_i", "deg_j", "idx_j", "value", "symmetry_zero"] {
        assert!(!pair[key].is_null(), "missing {key}");
    }
    assert_eq!(v["summary"]["symmetry_zeros_vanish"], true);
    let csv = ok(&["gram", "--max-degree", "1", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("deg_i,idx_i,deg_j,idx_j,value,symmetry_zero"));
}

#[test]
fn gram_out_file_respects_env_dir() {
    let dir = scratch("out");
    let status = Command::new(env!("CARGO_BIN_EXE_heis"))
        .args(["gram", "--max-degree", "2", "--format", "json", "--out", "nested/report.json"])
        .env("HEIS_OUT_DIR", &dir)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.join("nested/report.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["max_degree"], 2);
}

#[test]
fn project_examples() {
    let v = json(&["project", "--poly", "x", "--max-degree", "1", "--format", "json"]);
    assert!(v["residual"].as_f64().unwrap() <= 1e-10);
    let x = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["basis"] == "x")
        .unwrap();
    assert!((x["coefficient"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let v = json(&["project", "--poly", "(x^2+y^2)^2+t^2", "--max-degree", "4", "--format", "json"]);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn moments_precision() {
    let v = json(&["moments", "--poly", "1", "--precision", "30", "--format", "json"]);
    assert_eq!(v["exact"], "2*pi^2");
    assert_eq!(v["decimal"], "19.739208802178717237668981999752");
    let csv = ok(&["moments", "--max-degree", "2", "--format", "csv", "--weight", "horizontal"]);
    assert!(csv.starts_with("a,b,c,exact,decimal\n"));
}

#[test]
fn verify_single_claims() {
    let v = json(&["verify", "--claim", "sphere-orthogonality-claim", "--format", "json"]);
    let claim = &v["claims"][0];
    assert_eq!(claim["status"], "MEASURED");
    assert_eq!(claim["criterion"], 10);
    let ev = claim["evidence"].as_array().unwrap();
    let exact = ev.iter().find(|e| e["name"] == "exact-value").unwrap();
    assert_eq!(exact["value"]["closed_form"], "3/4*pi^2");
    let random = ev.iter().find(|e| e["name"] == "projection-random").unwrap();
    assert_eq!(random["value"].as_array().unwrap().len(), 20);

    let args = ["verify", "--claim", "eta-decomposition", "--seed", "7", "--format", "json"];
    assert_eq!(ok(&args), ok(&args));
    let text = ok(&["verify", "--claim", "gauge-identities"]);
    assert!(text.contains("PASS weighted-eigen-identity-h1"));
}

#[test]
fn failing_claim_exits_one() {
    let out = heis(&["verify", "--claim", "measure-consistency", "--n-theta", "8", "--n-psi", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("ASSERTED-FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["basis"],
        &["basis", "--degree", "1", "--format", "csv"],
        &["basis", "--group", "h2", "--degree", "1", "--method", "triangular"],
        &["basis", "--group", "/nonexistent/spec.json", "--degree", "1"],
        &["decompose", "--poly", "x+t"],
        &["decompose", "--poly", "x+"],
        &["decompose", "--poly", "z"],
        &["moments", "--poly", "x", "--precision", "1000"],
        &["gram", "--max-degree", "2", "--n-theta", "1"],
        &["verify", "--claim", "nope"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = heis(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
