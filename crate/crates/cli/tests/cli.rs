use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn minbase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minbase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = minbase(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, text)
}

fn verify(path: &Path) -> i32 {
    minbase(&["verify", path.to_str().unwrap()]).status.code().unwrap()
}

#[test]
fn partition_bases_match_the_dispatch_table() {
    for (a, b, size) in [("5", "3", 3), ("3", "2", 4), ("8", "3", 2)] {
        let (code, v, _) = json_of(&["partition-base", "-a", a, "-b", b]);
        assert_eq!(code, 0, "({a},{b})");
        assert_eq!(v["result"]["base_size"], size);
        assert_eq!(v["seed"], 1);
    }
}

#[test]
fn beta_examples() {
    let (code, v, _) = json_of(&["beta", "Q8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["alpha"], 2);
    assert_eq!(v["result"]["beta"], "infinity");
    let (_, v, _) = json_of(&["beta", "C4"]);
    assert_eq!(v["result"]["beta"], 1);
    let (code, v, _) = json_of(&["beta", "A5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["assertions"].as_array().unwrap().len(), 3);
}

#[test]
fn every_certificate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 9] = [
        &["partition-base", "-a", "6", "-b", "5"],
        &["base-size", "-a", "4", "-b", "2", "--mode", "exact"],
        &[
            "stabilizer",
            "--partition",
            "{1,2,3}|{4,5,6}",
            "--partition",
            "{1,4}|{2,5}|{3,6}",
        ],
        &["alpha", "S4"],
        &["beta", "S5"],
        &["qhat", "--family", "g2", "--q", "9..81", "--c", "3"],
        &["sp4", "--q", "5"],
        &["soluble", "--spec", "SL23"],
        &["theorem4", "--spec", "S4"],
    ];
    for (i, args) in commands.iter().enumerate() {
        let (code, v, text) = json_of(args);
        assert_eq!(code, 0, "{args:?}");
        assert!(!v["witnesses"].as_array().unwrap().is_empty(), "{args:?}");
        let path = dir.path().join(format!("{i}.json"));
        std::fs::write(&path, text).unwrap();
        assert_eq!(verify(&path), 0, "{args:?}");
    }
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let (_, mut v, _) = json_of(&["alpha", "S4"]);
    // Dropping a witness subgroup leaves an intersection larger than the
    // Frattini subgroup.
    v["witnesses"][0]["subgroups"].as_array_mut().unwrap().pop();
    let path = dir.path().join("alpha.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(verify(&path), 1);

    let (_, mut v, _) = json_of(&["partition-base", "-a", "5", "-b", "3"]);
    v["witnesses"][0]["partitions"].as_array_mut().unwrap().pop();
    v["witnesses"][0]["base_size"] = 2.into();
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(verify(&path), 1);
}

#[test]
fn search_free_output_is_byte_identical() {
    for args in [
        &["beta", "A5"][..],
        &["qhat", "--family", "o10", "--q", "8,9,11", "--c", "3"],
    ] {
        let (_, _, a) = json_of(args);
        let (_, _, b) = json_of(args);
        assert_eq!(a, b);
    }
}

#[test]
fn refusals_exit_with_two() {
    let cases: [&[&str]; 6] = [
        &["alpha", "S7"],
        &["alpha", "NOPE"],
        &["beta", "A5", "--cap", "5000"],
        &["partition-base", "-a", "2", "-b", "3"],
        &["orth", "--n", "11", "--q", "5"],
        &["soluble", "--spec", "A5"],
    ];
    for args in cases {
        let out = minbase(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn failing_verdict_exits_with_one() {
    // c = 1 is far too small for the table to fall below 1.
    let (code, v, _) = json_of(&["qhat", "--family", "g2", "--q", "9", "--c", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
}

#[test]
fn timing_is_opt_in() {
    let (_, v, _) = json_of(&["alpha", "C6"]);
    assert!(v.get("elapsed_ms").is_none());
    let (_, v, _) = json_of(&["--timing", "alpha", "C6"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn catalog_lists_groups() {
    let out = minbase(&["--json", "catalog"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["almost_simple"].as_array().unwrap().len(), 6);
    assert!(v["soluble"].as_array().unwrap().len() >= 20);
}
