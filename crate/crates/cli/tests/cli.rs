use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newton-sums"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn analyze_reports_sigma_and_kappa() {
    let out = run(&["analyze", "-f", "x1^2+x2^3", "-p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sigma"], "5/6");
    assert_eq!(v["kappa"], 1);
    assert_eq!(v["certificates"][0]["verdict"], "nondegenerate_up_to_k");

    let v = json(&run(&["analyze", "-f", "x1*x2", "-p", "3"]));
    assert_eq!(v["sigma"], "1");
    assert_eq!(v["kappa"], 2);

    let v = json(&run(&["analyze", "-f", "x1^2*x2-x1", "-p", "3"]));
    assert_eq!(v["hyperplane"]["exists"], false);
}

#[test]
fn expsum_methods_agree() {
    let out = run(&["expsum", "-f", "x1^2", "-p", "5", "-m", "2", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["naive"]["re"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!((v["decomposed"]["re"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!(v["abs_diff"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["pass"], true);

    let v = json(&run(&["expsum", "-f", "x1", "-p", "7", "-m", "3", "--method", "naive"]));
    assert!(v["naive"]["re"].as_f64().unwrap().abs() < 1e-12);
    assert!(v.get("decomposed").is_none());

    let out = run(&["expsum", "-f", "x1^2+x2^3", "-p", "7", "-m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn zeta_poles_and_series() {
    let out = run(&["zeta", "-f", "x1^2", "-p", "5", "--poles"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["p"], 5);
    assert_eq!(strings(&v["candidates"]), ["-1/2", "-1"]);
    assert_eq!(v["order_at_sigma"], 1);
    assert!((v["leading_limit"].as_f64().unwrap() - 0.4).abs() < 1e-12);
    assert!(v["numerator"].is_array() && v["denominator"].is_array());

    let v = json(&run(&["zeta", "-f", "x1^2", "-p", "5", "--series", "2", "--oracle"]));
    assert_eq!(strings(&v["series"]), ["4/5", "0", "4/25"]);
    assert_eq!(v["oracle_match"], true);

    let v = json(&run(&["zeta", "-f", "x1", "-p", "3", "--series", "2"]));
    assert_eq!(strings(&v["series"]), ["2/3", "2/9", "2/27"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "-f", "x1+"]).status.code(), Some(2));
    assert_eq!(run(&["expsum", "-f", "x1", "-p", "13", "-m", "8", "--method", "naive"]).status.code(), Some(3));
    assert_eq!(run(&["zeta", "-f", "(x1+x2)^2", "-p", "5"]).status.code(), Some(4));
    assert_eq!(run(&["expsum", "-f", "(x1+x2)^2", "-p", "5", "-m", "1", "--method", "decomposed"]).status.code(), Some(4));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_suite_passes_and_writes_report() {
    let dir = std::env::temp_dir().join(format!("newton-sums-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let out = run(&["verify", "sigma-props", "--seed", "42", "--json", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 42);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, v);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_sets_the_budget() {
    let dir = std::env::temp_dir().join(format!("newton-sums-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "budget = 100\n").unwrap();
    let out = run(&["expsum", "-f", "x1*x2", "-p", "11", "-m", "1", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(&path, "unknown_key = 1\n").unwrap();
    let out = run(&["expsum", "-f", "x1", "-p", "3", "-m", "1", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "geometry", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["zeta", "-f", "x1^2+x2^3", "-p", "7", "--poles", "--series", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
