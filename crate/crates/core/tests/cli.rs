use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starfree")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn f_value() {
    let out = run(&["f", "--r", "2", "--t", "4", "--a", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "7");
    let v = json(&["f", "--r", "3", "--t", "3", "--a", "5", "--method", "t3-closed", "--json"]);
    assert_eq!(v["f"], "30");
    assert_eq!(v["method"], "t3-closed");
}

#[test]
fn upper_report() {
    let out = run(&["upper", "--r", "2", "--t", "3"]);
    let text = stdout(&out);
    assert!(text.contains("a*        3"));
    assert!(text.contains("base      18"));
    assert!(text.contains("exponent  3/10"));
    assert!(text.contains("value     2.3800"));
    let v = json(&["upper", "--r", "2", "--t", "4", "--json", "--precision", "12"]);
    assert_eq!(v["a_star"], 5);
    assert_eq!(v["base"], "200");
    assert_eq!(v["exponent"], "5/18");
    assert_eq!(v["value"], "4.35687398390");
    assert_eq!(v["g"]["5"], "320000000000");
}

#[test]
fn count_engines() {
    for engine in ["auto", "brute", "backtrack"] {
        let out = run(&["count", "--graph", "kbip:3,3", "--r", "2", "--t", "3", "--engine", engine]);
        assert_eq!(stdout(&out).trim(), "102", "{engine}");
    }
    let v = json(&["count", "--graph", "union:kbip:3,3+kbip:1,1", "--r", "2", "--t", "3", "--json"]);
    assert_eq!(v["count"], "204");
    assert_eq!(v["n"], 8);
}

#[test]
fn count_falls_back_to_dp_for_large_bicliques() {
    let v = json(&["count", "--graph", "kbip:7,7", "--r", "2", "--t", "4", "--json"]);
    assert_eq!(v["engine"], "dp");
    let w = json(&["biclique", "--m", "7", "--n", "7", "--r", "2", "--t", "4", "--json"]);
    assert_eq!(v["count"], w["count"]);
}

#[test]
fn biclique_and_sweep() {
    let v = json(&["biclique", "--m", "5", "--n", "5", "--r", "2", "--t", "4", "--json"]);
    assert_eq!(v["count"], "384080");
    assert_eq!(v["value"], "3.6178");
    let out = run(&["biclique", "--m", "3", "--n", "3", "--r", "2", "--t", "3", "--engine", "brute"]);
    assert!(stdout(&out).contains("count  102"));
    let v = json(&["sweep", "--r", "2", "--t", "3", "--max-vertices", "6", "--json"]);
    assert_eq!(v["best"]["m"], 3);
    assert_eq!(v["best"]["value"], "2.1616");
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn graph_files() {
    let dir = std::env::temp_dir().join(format!("starfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.txt");
    std::fs::write(&path, "# four-cycle\n4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    let spec = format!("file:{}", path.display());
    let out = run(&["count", "--graph", &spec, "--r", "2", "--t", "2"]);
    assert_eq!(stdout(&out).trim(), "2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["f", "--r", "2"]).status.code(), Some(1));
    assert_eq!(run(&["f", "--r", "1", "--t", "3", "--a", "2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let out = run(&["count", "--graph", "kbip:1,5", "--r", "2", "--t", "3"]);
    assert_eq!(stdout(&out).trim(), "0");
    let out = run(&["count", "--graph", "union:kbip:1,1+kbip:7,7", "--r", "2", "--t", "4"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let out = Command::new(env!("CARGO_BIN_EXE_starfree"))
        .args(["biclique", "--m", "5", "--n", "5", "--r", "2", "--t", "4"])
        .env("STARFREE_STATE_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains(" 0 failed"));
    let v = json(&["verify", "--json", "--sequential"]);
    assert_eq!(v["summary"]["failed"], 0);
}
