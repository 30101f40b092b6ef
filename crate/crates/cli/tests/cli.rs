use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cd2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cd2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn generate(dir: &Path, r: &str, seed: &str) -> String {
    let path = dir.join(format!("r{r}_{seed}.json"));
    let path = path.to_str().unwrap().to_string();
    let out = cd2(&["generate", "--r", r, "--seed", seed, "--out", &path]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn verify_dim_passes() {
    let out = cd2(&["verify-dim", "--r", "7", "--imax", "42"]);
    assert_eq!(code(&out), 0);
    let out = cd2(&["verify-dim", "--r", "7,9", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn blowup_of_generated_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "7", "42");
    let out = cd2(&["blowup", "--model", &path, "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["discrepancy"], "2");
    assert_eq!(v["e3"], "1/7");
    assert_eq!(v["passed"], true);
    let quotients: Vec<&Value> = v["charts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["finding"]["kind"] == "quotient")
        .collect();
    assert_eq!(quotients.len(), 1);
}

#[test]
fn blowup_of_germ_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("germ.json");
    std::fs::write(
        &path,
        r#"{"ambient":"1/2(1,1,1,0)","vars":["x1","x2","x3","x4"],"weights":["1","1","1","1"],
            "equations":["x1^2 + x2^2 + x3^2 + x4^4"]}"#,
    )
    .unwrap();
    let out = cd2(&["blowup", "--model", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["charts"][3]["finding"]["kind"], "manual_analysis_required");
}

#[test]
fn terminal_verdicts() {
    let out = cd2(&["terminal", "--type", "1/2(1,1,0)"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("not terminal"));
    let out = cd2(&["terminal", "--type", "1/14(1,13,11)", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["terminal"], true);
}

#[test]
fn charts_and_lattice_points() {
    let out = cd2(&["charts", "--ambient", "1/2(1,1,1,0,0)", "--weights", "4,3,2,1,7", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let orders: Vec<u64> = json_of(&out)["charts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![8, 6, 4, 2, 14]);

    let out = cd2(&["ni", "--r", "7", "--i", "2", "--parity", "1", "--format", "json"]);
    assert_eq!(json_of(&out)["count"], 1);
    let out = cd2(&["dims", "--r", "7", "--imax", "4", "--format", "json"]);
    assert_eq!(json_of(&out)["dims"].as_array().unwrap().len(), 10);
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = generate(dir.path(), "17", "3");
    let out = cd2(&["validate", "--model", &good, "--strict-remark"]);
    assert_eq!(code(&out), 0);

    let square = dir.path().join("square.json");
    std::fs::write(&square, r#"{"r":9,"p":"x3^5","q":"x3^2*x4^4"}"#).unwrap();
    let out = cd2(&["validate", "--model", square.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["passed"], false);

    let out = cd2(&["validate", "--model", &good, square.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{not json").unwrap();
    let out = cd2(&["validate", "--model", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&cd2(&["terminal", "--type", "14(1,2)"])), 2);
    assert_eq!(code(&cd2(&["charts", "--ambient", "1/2(1,1,1)", "--weights", "2,2,2"])), 2);
    assert_eq!(code(&cd2(&["generate", "--r", "11", "--seed", "0", "--out", "/dev/null"])), 2);
    assert_eq!(code(&cd2(&["dims", "--r", "7"])), 2);
    assert_eq!(code(&cd2(&["frobnicate"])), 2);
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = generate(dir.path(), "9", "5");
    let first = cd2(&["blowup", "--model", &a, "--format", "json"]).stdout;
    let second = cd2(&["blowup", "--model", &a, "--format", "json"]).stdout;
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    // keys are emitted in sorted order
    let charts_at = text.find("\"charts\"").unwrap();
    let discrepancy_at = text.find("\"discrepancy\"").unwrap();
    assert!(charts_at < discrepancy_at);
}
