use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tricubic")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("bad JSON ({e}); stderr: {stderr}"));
    (code, v)
}

fn factors(v: &Value) -> Vec<(String, u64)> {
    v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["prime"].as_str().unwrap().to_string(), f["exp"].as_u64().unwrap()))
        .collect()
}

#[test]
fn gf5_reciprocal_x() {
    let (code, r) = run_json(&["--field", "5", "--a", "1/x"]);
    assert_eq!(code, 0);
    assert_eq!(r["branch"], "podd");
    assert_eq!(r["field"]["p"], 5);
    // x^2 (4x^2 - 1) up to a unit: x^2 (x + 2)(x + 3) over GF(5)
    assert_eq!(factors(&r["disc"]), vec![("x".into(), 2), ("2 + x".into(), 1), ("3 + x".into(), 1)]);
    assert_eq!(r["index"]["generator"], "x");
    assert_eq!(r["generator_scale"], "x");
    let basis = r["basis"].as_array().unwrap();
    assert_eq!(basis[2]["coords"], serde_json::json!(["0", "0", "1"]));
    assert_eq!(basis[2]["den"], "x");
    assert_eq!(r["verification"]["passed"], true);
    assert_eq!(r["verification"]["pmax"][0]["verdict"], "maximal");
}

#[test]
fn gf3_worked_instances() {
    let (code, r) = run_json(&["--field", "3", "--b", "1/x"]);
    assert_eq!(code, 0);
    assert_eq!(r["disc"]["generator"], "x^3");
    let basis = r["basis"].as_array().unwrap();
    assert_eq!(basis[1]["coords"], serde_json::json!(["0", "x", "0"]));
    assert_eq!(basis[2]["coords"], serde_json::json!(["0", "0", "x^2"]));

    let (code, r) = run_json(&["--field", "3", "--b", "x"]);
    assert_eq!(code, 0);
    assert_eq!(r["disc"]["generator"], "x");
    assert_eq!(r["basis"][2]["den"], "x");
}

#[test]
fn gf2_power_basis() {
    let (code, r) = run_json(&["--field", "2", "--a", "x"]);
    assert_eq!(code, 0);
    assert_eq!(r["disc"]["generator"], "x^2");
    assert_eq!(r["index"]["generator"], "1");
    assert_eq!(r["hasse"]["b_std"], "(1 + x)/x");
    let (code, r2) = run_json(&["--field", "2", "--cubic", "0,1,x"]);
    assert_eq!(code, 0);
    assert_eq!(r2["coefficient"], "x");
    assert_eq!(r2["disc"], r["disc"]);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run(&["--field", "3", "--a", "1/x"]);
    assert_eq!(code, 2);
    assert!(err.contains("--b"));
    assert_eq!(run(&["--field", "5", "--b", "x"]).0, 2);
    assert_eq!(run(&["--field", "6", "--a", "x"]).0, 2);
    assert_eq!(run(&["--field", "5", "--a", "x +"]).0, 2);
    assert_eq!(run(&["--field", "5"]).0, 2);
    assert_eq!(run(&["--field", "5", "--a", "x", "--b", "x"]).0, 2);
    assert_eq!(run(&["--field", "5", "--a", "x", "--verify", "sloppy"]).0, 2);
}

#[test]
fn unsupported_inputs_exit_3() {
    assert_eq!(run(&["--field", "5", "--cubic", "0,0,x"]).0, 3);
    // -c/3 = x is not a square
    assert_eq!(run(&["--field", "5", "--cubic", "0,2*x,1"]).0, 3);
    // y^3 - 3y - 2 = (y - 2)(y + 1)^2 is reducible and inseparable
    assert_eq!(run(&["--field", "5", "--a", "2"]).0, 3);
    // (X - x)(X^2 + xX + 1) has the root x
    assert_eq!(run(&["--field", "5", "--cubic", "0,1 - x^2,-x"]).0, 3);
}

#[test]
fn budget_exhaustion_exits_5() {
    let (code, r) = run_json(&["--field", "5", "--a", "1/x", "--budget", "1"]);
    assert_eq!(code, 5);
    assert_eq!(r["verification"]["budget_exceeded"], true);
    assert_eq!(r["verification"]["pmax"][0]["verdict"], "skipped_budget");
}

#[test]
fn reports_are_deterministic() {
    let args = ["--field", "9", "--b", "t*x + 1/x^3", "--verify", "paranoid"];
    let (c1, a) = run(&args).0.eq(&0).then(|| run_json(&args)).unwrap();
    let (_, b) = run_json(&args);
    assert_eq!(c1, 0);
    assert_eq!(a, b);
    let (_, other_seed) = run_json(&[&args[..], &["--seed", "17"]].concat());
    assert_eq!(a["basis"], other_seed["basis"]);
    assert_eq!(other_seed["seed"], 17);
    assert!(a.get("timing_ms").is_none());
}

#[test]
fn json_file_and_pretty_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = run(&["--field", "7", "--a", "x/(x^2+1)", "--json", path.to_str().unwrap(), "--timing"]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["verification"]["passed"], true);
    assert!(r["timing_ms"].is_u64());

    let (code, stdout, _) = run(&["--field", "5", "--a", "1/x", "--pretty"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("index        x"));
    assert!(stdout.contains("result       PASS"));
}

#[test]
fn explicit_modulus() {
    let (code, r) = run_json(&["--field", "5^2", "--modulus", "2,1,1", "--a", "t/x"]);
    assert_eq!(code, 0);
    assert_eq!(r["field"]["modulus"], serde_json::json!([2, 1, 1]));
    assert_eq!(run(&["--field", "5^2", "--modulus", "1,0,1", "--a", "x"]).0, 2);
}
