use std::process::{Command, Output};

use serde_json::Value;

const LEMNISCATE: &str = "(x^2+y^2)^2-2*(x^2-y^2)*z^2";
const QUINTIC: &str = "y^2*z^3-x^5";
const QUARTIC: &str = "2*y*z^3+2*z^2*y^2+2*z*y^3+2*y^4-2*z^3*x+2*z*y*x^2+5*y^2*x^2+3*x^4";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caustic")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    let v = json(&["class", "--curve", QUINTIC, "--source", "0:1:0"]);
    assert_eq!(v["class"], 8);
    let v = json(&["class", "--curve", LEMNISCATE, "--source", "1:0:1"]);
    assert_eq!(v["class"], 8);
    let v = json(&["class", "--curve", QUARTIC, "--source", "0:0:1"]);
    assert_eq!(v["class"], 23);
    assert_eq!(v["consistent"], true);
}

#[test]
fn flat_keys_are_present() {
    let v = json(&["class", "--curve", LEMNISCATE, "--source", "3:5:7"]);
    for k in [
        "g", "f", "f_prime", "g_prime", "q_prime", "mu_I", "mu_J", "mu_S", "c_prime", "dual_degree",
        "mclass_theorem1", "mclass_ledger", "mclass_flemma", "delta1", "class", "consistent",
    ] {
        assert!(v.get(k).is_some(), "missing key {k}");
    }
    assert_eq!(v["dual_degree"], 6);
}

#[test]
fn output_is_byte_stable() {
    let args = ["class", "--curve", QUARTIC, "--source", "1:2:3", "--json", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn source_over_an_extension() {
    let v = json(&["class", "--curve", QUINTIC, "--ext", "t^3-20", "--source", "-3/25*t:0:1", "--delta1", "auto"]);
    assert_eq!(v["class"], 9);
    assert_eq!(v["delta1"], 1);
}

#[test]
fn single_paths() {
    for (p, key) in [("t1", "mclass_theorem1"), ("ledger", "mclass_ledger"), ("flemma", "mclass_flemma")] {
        let v = json(&["class", "--curve", QUINTIC, "--source", "1:1:1", "--paths", p]);
        assert_eq!(v[key], 12);
        assert_eq!(v["class"], 12);
    }
}

#[test]
fn delta1_override_divides_mclass() {
    let v = json(&["class", "--curve", LEMNISCATE, "--source", "1:0:1", "--delta1", "2"]);
    assert_eq!(v["class"], 4);
    let out = run(&["class", "--curve", QUINTIC, "--source", "2:3:7", "--delta1", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let parse = run(&["class", "--curve", "x^2+y", "--source", "1:0:1"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("homogeneous"));
    let bad_point = run(&["class", "--curve", QUINTIC, "--source", "1:0"]);
    assert_eq!(bad_point.status.code(), Some(1));
    let focus = run(&["class", "--curve", "x^2+y^2-z^2", "--source", "0:0:1"]);
    assert_eq!(focus.status.code(), Some(2));
    assert!(focus.stdout.is_empty());
    let cyclic = run(&["class", "--curve", QUINTIC, "--source", "1:i:0"]);
    assert_eq!(cyclic.status.code(), Some(2));
    let usage = run(&["class", "--curve", QUINTIC]);
    assert_eq!(usage.status.code(), Some(1));
}

#[test]
fn table_rows() {
    let out = run(&["table", "--curve", QUINTIC, "--source", "0:1:0", "--source", "2:3:7", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["class"], 8);
    assert_eq!(rows[1]["class"], 13);
}

#[test]
fn brocard_lemoyne_comparison() {
    let v = json(&["bl-compare", "--curve", QUARTIC, "--source", "0:0:1"]);
    assert_eq!(v["brocard_lemoyne"]["value"], 21);
    assert_eq!(v["correction_sum"], 2);
    assert_eq!(v["mclass"], 23);
    let out = run(&["bl-compare", "--curve", QUINTIC, "--source", "1:0:0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn other_commands() {
    let v = json(&["dual-degree", "--curve", QUARTIC]);
    assert_eq!(v["dual_degree"], 12);
    assert_eq!(v["polar"], v["ledger"]);
    let v = json(&["terms", "--curve", QUINTIC, "--source", "0:1:0"]);
    assert_eq!(v["mu_S"], 3);
    let v = json(&["base-points", "--curve", LEMNISCATE, "--source", "3:1:7"]);
    let total: u64 = v["base_points"].as_array().unwrap().iter().map(|p| p["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 3);
    let v = json(&["branches", "--curve", QUARTIC, "--source", "0:0:1"]);
    assert!(v["branches"].as_array().unwrap().iter().all(|b| b["h"] == b["h_direct"]));
    let v = json(&["verify", "--curve", LEMNISCATE, "--source", "1:0:1", "--matrices", "3"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&["class", "--curve", LEMNISCATE, "--source", "1:0:1"]);
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&["class", "--curve", LEMNISCATE, "--source", "1:0:1", "--timing"]);
    for k in ["t1", "ledger", "flemma"] {
        assert!(timed["timing_ms"][k].is_u64(), "missing timing for {k}");
    }
    assert_eq!(timed["class"], plain["class"]);
}
