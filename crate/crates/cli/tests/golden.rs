//! Reports for fixed inputs match the checked-in documents in `golden/`,
//! apart from timing, tool version and execution mode.

use std::process::Command;

use serde_json::Value;

fn normalise(mut v: Value) -> Value {
    let obj = v.as_object_mut().unwrap();
    obj.remove("timing");
    obj["tool"].as_object_mut().unwrap().remove("version");
    obj["input"].as_object_mut().unwrap().remove("exec");
    v
}

fn check(name: &str, args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_unireg"))
        .args(["run"])
        .args(args)
        .arg("--json")
        .output()
        .unwrap();
    let got: Value = serde_json::from_slice(&out.stdout).unwrap();
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let want: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(normalise(got), normalise(want), "{name}");
}

#[test]
fn degree_counterexample() {
    check("degree-counterexample", &["paper.degree-counterexample"]);
}

#[test]
fn remark_fixture() {
    check("remark-fixture", &["paper.remark-fixture"]);
}

#[test]
fn diamond() {
    check("diamond", &["paper.diamond"]);
}

#[test]
fn scan_z6() {
    check("scan-z6", &["ring.scan", "--ring", "Z/6"]);
}

#[test]
fn ten_relations_m2f2() {
    check("ten-relations-m2f2", &["paper.ten-relations", "--ring", "M2(F2)", "--elem", "[[1,1],[0,0]]"]);
}
