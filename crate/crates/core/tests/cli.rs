use std::process::Command;

use serde_json::Value;

fn a2web(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_a2web")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("a2web-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn reduce_bigon() {
    let (code, v, _) = a2web(&["reduce", "--n", "2", "E1*E1"]);
    assert_eq!(code, 0);
    let terms = v["terms"].as_object().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms.values().next().unwrap(), "2");
    let (_, v, _) = a2web(&["--q", "reduce", "--n", "2", "--word", "1,1", "--trace"]);
    // [2]_q = q^{-1/2} + q^{1/2}, printed in t = q^{1/4}
    assert_eq!(v["terms"].as_object().unwrap().values().next().unwrap(), "t^-2 + t^2");
    assert!(v["trace"]["steps"].is_object());
}

#[test]
fn labelings_of_a_generator() {
    let (code, v, _) = a2web(&["labelings", "--n", "2", "--word", "1", "--boundary", "1,2:1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    let (_, v, _) = a2web(&["labelings", "--n", "2", "--word", "1"]);
    assert_eq!(v["count"], 12);
}

#[test]
fn immanants_on_a_matrix() {
    let m = scratch("x.json", r#"[[1, "1/2"], [2, 3]]"#);
    let (code, v, _) = a2web(&["immanants", "--n", "2", "--matrix", &m]);
    assert_eq!(code, 0);
    let mut vals: Vec<&str> = v["values"].as_object().unwrap().values().map(|x| x.as_str().unwrap()).collect();
    vals.sort();
    assert_eq!(vals, ["1", "2"]);
    let (_, t, _) = a2web(&["immanants", "--n", "3", "--table"]);
    assert_eq!(t["webs"].as_array().unwrap().len(), 6);
}

#[test]
fn malformed_matrix_is_a_located_error() {
    let m = scratch("bad.json", "[[1, 2],\n [3, }");
    let (code, _, err) = a2web(&["immanants", "--n", "2", "--matrix", &m]);
    assert_eq!(code, 2);
    assert!(err.contains(":2:"), "{err}");
}

#[test]
fn decompose_and_bridge() {
    let (code, v, _) = a2web(&[
        "decompose", "--n", "4", "--I1", "1,4", "--J1", "1,3", "--I2", "2", "--J2", "2", "--I3", "3", "--J3", "4",
        "--verify", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert!(!v["coefficients"].as_object().unwrap().is_empty());
    let (code, v, _) = a2web(&["bridge", "--n", "4", "--w", "231", "--I3", "3", "--J3", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    let (code, _, _) = a2web(&["bridge", "--n", "4", "--w", "321", "--I3", "3", "--J3", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn network_commands() {
    let net = a2web::networks::PlanarNetwork::identity(2).unwrap().to_json();
    let f = scratch("net.json", &net);
    let (code, v, _) = a2web(&["network", "--file", &f, "--matrix"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!([["1", "0"], ["0", "1"]]));
    let (code, v, _) = a2web(&["network", "--file", &f, "--check-corollary"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_exit_status_and_refusal() {
    let (code, v, _) = a2web(&["verify", "--suite", "all", "--n", "2", "--samples", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (code, _, err) = a2web(&["verify", "--suite", "networks", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("refuses"), "{err}");
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "--suite", "confluence", "--n", "3", "--samples", "5", "--seed", "9", "--no-timing"];
    let (_, a, _) = a2web(&args);
    let (_, b, _) = a2web(&args);
    assert_eq!(a, b);
}
