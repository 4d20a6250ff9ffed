use std::process::Command;

use serde_json::Value;

const Z4: &str = r#"{"kind":"galois","p":2,"t":2,"l":1}"#;
const Z9: &str = r#"{"kind":"galois","p":3,"t":2}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["chaincodes"];
    full.extend_from_slice(args);
    let code = chaincodes::cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn factor_x7() {
    let v = json(&["factor", "--ring", Z4, "--moduli", "x^7-1"]);
    let m = &v["moduli"][0];
    assert_eq!(m["factors"], serde_json::json!(["x+3", "x^3+2*x^2+x+3", "x^3+3*x^2+2*x+3"]));
    assert_eq!(m["product_matches"], true);
}

#[test]
fn classes_of_x7() {
    let v = json(&["classes", "--ring", Z4, "--moduli", "x^7-1"]);
    assert_eq!(v["count"], 3);
    let sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 3, 3]);
    let full = json(&["classes", "--full", "--ring", Z4, "--moduli", "x^7-1"]);
    for c in full["classes"].as_array().unwrap() {
        for key in ["p", "q", "w", "pi", "z", "sigma", "h", "g", "e", "ideal", "component_size"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn self_dual_modes() {
    let v = json(&["self-dual", "--exists", "--ring", Z4, "--moduli", "x^7-1"]);
    assert_eq!(v["exists"], true);
    let v = json(&["self-dual", "--construct", "--ring", Z4, "--moduli", "x^7-1"]);
    assert_eq!(v["cardinality"], "128");
    let v = json(&["self-dual", "--check", "--ring", Z4, "--moduli", "x^7-1", "--exponents", "1,1,1"]);
    assert_eq!(v["selfdual"], true);
    let (code, _, err) = run(&["self-dual", "--construct", "--ring", Z4, "--moduli", "x^3-1,y^3-1"]);
    assert_eq!(code, 1);
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["code"], "precondition");
}

#[test]
fn enumerate_streams_one_record_per_code() {
    let (code, out, _) = run(&["enumerate", "--ring", Z9, "--moduli", "x^2-1", "y^2-1"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 81);
    assert_eq!(lines[0]["cardinality"], "6561");
    assert_eq!(lines[0]["distance"], 1);
    assert_eq!(lines[80]["distance"], Value::Null);
}

#[test]
fn info_dual_and_distance() {
    let v = json(&["info", "--ring", Z4, "--moduli", "x^7-1", "--generators", "x^3+2*x^2+x+3"]);
    assert_eq!(v["hensel_lift"], true);
    assert_eq!(v["cardinality"], "256");
    let d = json(&["dual", "--ring", Z4, "--moduli", "x^7-1", "--exponents", "0,2,0"]);
    assert_eq!(d["cardinality"], "64");
    let e = json(&["distance", "--exact", "--ring", Z4, "--moduli", "x^7-1", "--exponents", "0,2,0"]);
    assert_eq!(e["distance"], 3);
    assert_eq!(e["equal"], true);
    let b = json(&["distance", "--bound", "--ring", Z4, "--moduli", "x^7-1", "--exponents", "0,2,0"]);
    assert_eq!(b["bound"], 3);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["classes", "--ring", Z4, "--moduli", "x^2-1"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["code"], "not_semisimple");
    let (code, _, err) = run(&["distance", "--exact", "--ring", Z4, "--moduli", "x^7-1", "--exponents", "0,0,0", "--budget", "10"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["code"], "budget_exceeded");
    let (code, _, err) = run(&["info", "--ring", "{not json", "--moduli", "x^7-1"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["code"], "parse");
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["code"], "usage");
    let (code, _, _) = run(&["distance", "--exact", "--ring", Z4, "--moduli", "x^7-1", "--exponents", "2,2,2"]);
    assert_eq!(code, 1);
}

#[test]
fn oracle_check_and_kerdock() {
    let v = json(&["oracle-check", "--suite", "all"]);
    assert_eq!(v["passed"], true);
    let v = json(&["oracle-check", "--suite", "duality", "--ring", Z4, "--moduli", "x^7-1"]);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    let k = json(&["kerdock-demo", "--q", "2", "--m", "3"]);
    assert_eq!(k["length"], 14);
    assert_eq!(k["cardinality"], 256);
    assert!(k["exact_distance"].as_u64().is_some());
    assert_eq!(k["formula_value"].as_array().unwrap().len(), 2);
    let (code, _, _) = run(&["kerdock-demo", "--q", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["classes", "--full", "--ring", Z4, "--moduli", "x^3-1", "y^3-1", "--seed", "7"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let (_, c, _) = run(&["classes", "--full", "--ring", Z4, "--moduli", "x^3-1", "y^3-1", "--seed", "8"]);
    assert_eq!(a, c);
}

#[test]
fn binary_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("classes.json");
    let status = Command::new(env!("CARGO_BIN_EXE_chaincodes"))
        .args(["classes", "--ring", Z4, "--moduli", "x^7-1", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_chaincodes")).args(["classes", "--ring", Z4, "--moduli", "x^4-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
