use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ttk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttk"))
        .args(args)
        .env_remove("TTK_CACHE_DIR")
        .output()
        .expect("run ttk")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn validate(schema: &str, out: &Output) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{schema}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let lines = json_lines(out);
    assert!(!lines.is_empty());
    for line in lines {
        assert!(validator.is_valid(&line), "{line} does not match {schema}");
    }
}

#[test]
fn trefoil_genus() {
    let out = ttk(&["genus", "--spec", "T[1,1;2,3]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out), vec![serde_json::json!({"genus": 1, "threshold": 1})]);
}

#[test]
fn slope_range() {
    let out = ttk(&["lspace-range", "--spec", "T[2,1;3,4]", "--slope", "7/1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out), vec![serde_json::json!({"threshold": 7, "in_range": true})]);

    let out = ttk(&["lspace-range", "--spec", "T[2,1;3,4]", "--slope", "13/2"]);
    assert_eq!(json_lines(&out)[0]["in_range"], false);
}

#[test]
fn trefoil_relation_text() {
    let out = ttk(&["present", "--spec", "T[1,1;2,3]", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "y*x*y = x*y*x"));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(ttk(&["genus", "--spec", "T[1,1;3,6]"]).status.code(), Some(2));
    assert_eq!(ttk(&["genus", "--slope", "1/0", "--spec", "T[1,1;2,3]"]).status.code(), Some(2));
    assert_eq!(ttk(&["genus", "--grid", "p=1..3"]).status.code(), Some(2));
    assert_eq!(ttk(&["genus"]).status.code(), Some(2));
    assert_eq!(ttk(&["lspace-range", "--spec", "T[1,1;2,3]"]).status.code(), Some(2));
    // below the L-space threshold 2g - 1 = 15
    let out = ttk(&["check-proofs", "--spec", "T[2,2;3,7]", "--slope", "1/1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_verification_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = ttk(&["check-proofs", "--spec", "T[2,2;3,7]", "--emit", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file = dir.path().join("l2m2p3q7-lemma.json");
    let text = std::fs::read_to_string(&file).unwrap();
    let mut script: Value = serde_json::from_str(&text).unwrap();
    let path = file.to_str().unwrap();
    assert_eq!(ttk(&["check-proofs", "--script", path]).status.code(), Some(0));

    // claim the last inequality with its sides swapped
    let steps = script["steps"].as_array_mut().unwrap();
    let last = &mut steps.last_mut().unwrap()["conclusion"];
    assert_eq!(last["rel"], ">");
    let (lhs, rhs) = (last["lhs"].clone(), last["rhs"].clone());
    last["lhs"] = rhs;
    last["rhs"] = lhs;
    std::fs::write(&file, serde_json::to_string(&script).unwrap()).unwrap();
    let out = ttk(&["check-proofs", "--script", path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["status"], "rejected");
}

#[test]
fn check_proofs_all() {
    let out = ttk(&["check-proofs", "--spec", "T[1,1;2,3]", "--slope", "1/1", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let scripts: Vec<String> = json_lines(&out).iter().map(|l| l["script"].as_str().unwrap().to_string()).collect();
    assert_eq!(scripts, ["lemma", "fixedpoint", "fixedpoint_mirrored", "key", "final"]);
    validate("check-proofs", &out);
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--grid", "p=2..3,k=1..2,m=1..2", "--no-timing"];
    let a = ttk(&args);
    let b = ttk(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
    let args = ["verify-longitude", "--grid", "p=3,k=2,m=1..2"];
    assert_eq!(ttk(&args).stdout, ttk(&args).stdout);
}

#[test]
fn sweep_lines_and_timing() {
    let out = ttk(&["sweep", "--grid", "p=3,k=2,m=1"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert!(lines.iter().all(|l| l["ms"].is_u64() && l["status"] == "pass"));
    assert!(lines.iter().any(|l| l["check"] == "final"));
    validate("sweep", &out);
}

#[test]
fn outputs_match_schemas() {
    let cache = tempfile::tempdir().unwrap();
    let cache = cache.path().to_str().unwrap();
    let grid = ["--grid", "p=2..3,k=1..2,m=1"];
    for (cmd, extra) in [
        ("present", vec![]),
        ("alexander", vec![]),
        ("genus", vec![]),
        ("lspace-range", vec!["--slope", "5/1"]),
        ("verify-longitude", vec![]),
        ("quotients", vec!["--cache", cache, "--max-degree", "4"]),
        ("check-proofs", vec![]),
    ] {
        let mut args = vec![cmd];
        args.extend(grid);
        args.extend(extra);
        let out = ttk(&args);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        validate(cmd, &out);
    }
}
