use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraprod")).args(args).output().expect("spawn paraprod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: &[(&[&str], &str)] = &[
        (&["table", "--space", "bergman"], "table_bergman.txt"),
        (&["table", "--space", "hardy"], "table_hardy.txt"),
        (&["--json", "table", "--space", "bergman"], "table_bergman.json"),
        (&["--json", "table", "--space", "hardy"], "table_hardy.json"),
        (&["--json", "normalize", "T*S"], "normalize_ts.json"),
        (&["normalize", "M^2"], "normalize_m2.txt"),
        (&["--json", "classify", "S*T^2", "--space", "hardy"], "classify_st2_hardy.json"),
        (&["classify", "S*T^2", "--space", "bergman"], "classify_st2_bergman.txt"),
        (&["--json", "verify", "determinants"], "verify_determinants.json"),
    ];
    for (args, file) in cases {
        let o = run(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{args:?} vs {file}");
    }
}

#[test]
fn normalize_latex() {
    let o = run(&["normalize", "T*S", "--latex"]);
    assert_eq!(stdout(&o).trim(), r"S_g T_g - T_g^{2} - \left(g(0) (g-g(0))\right)\delta_0");
}

#[test]
fn eval_exact_and_series() {
    let o = run(&["eval", "T", "--g", "z^2", "--f", "1", "--exact"]);
    assert_eq!(stdout(&o).trim(), "z^2");
    let v = json(&["--json", "eval", "M", "--series", "logE", "--f", "1", "--N", "4"]);
    assert_eq!(v["N"], 4);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 5);
}

#[test]
fn norms_and_opnorm() {
    let v = json(&["--json", "norm", "--kind", "hardy", "--f", "poly(1,1)"]);
    assert!((v["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    let v = json(&["--json", "norm", "--kind", "bergman", "--f", "poly(0,1)", "--alpha", "1"]);
    // |z|^2 against (alpha+1)(1-|z|^2)^alpha: 1/C(3,1)
    assert!((v["value"].as_f64().unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-9);
    let v = json(&["--json", "opnorm", "T", "--g", "z", "--trunc", "200"]);
    assert!((v["value"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "oracle", "--trials", "5"]).status.code(), Some(0));
    // unknown subcommand, missing mode group, bad space
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "T", "--f", "1"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "S", "--space", "bergman", "--alpha", "-2"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "commutators", "--k-max", "9"]).status.code(), Some(1));
    // the ratio threshold on this ladder is not met, so the report fails
    let o = run(&["--json", "experiment", "counterexample-growth", "--ladder", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn parse_error_points_at_offset() {
    let o = run(&["normalize", "S*(T"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    let lines: Vec<&str> = err.lines().collect();
    assert!(lines[0].starts_with("error: cannot parse expression"), "{err}");
    assert_eq!(lines[1].trim_start(), "S*(T");
    assert_eq!(lines[2].find('^'), Some(2 + 4));
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["--json", "norm", "--kind", "bergman", "--f", "pow(logE,0.6)"];
    let one = Command::new(env!("CARGO_BIN_EXE_paraprod")).args(args).env("PARAPROD_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_paraprod")).args(args).env("PARAPROD_THREADS", "4").output().unwrap();
    assert!(one.status.success() && many.status.success());
    let a: Value = serde_json::from_str(&stdout(&one)).unwrap();
    let b: Value = serde_json::from_str(&stdout(&many)).unwrap();
    let (a, b) = (a["value"].as_f64().unwrap(), b["value"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-13 * a.abs(), "{a} vs {b}");
}

#[test]
fn experiments_emit_reports() {
    for args in [
        &["--json", "experiment", "dilation"][..],
        &["--json", "experiment", "power-inequality", "--samples", "5"],
        &["--json", "experiment", "pointwise-bound"],
        &["--json", "experiment", "vmoa-probe", "--ladder", "3"],
    ] {
        let v = json(args);
        assert!(v["name"].is_string() && v["observations"].is_array(), "{args:?}: {v}");
        assert_ne!(v["verdict"], "fail", "{args:?}");
    }
}
