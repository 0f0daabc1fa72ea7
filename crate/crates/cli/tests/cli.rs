use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn unireg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unireg"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn system(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn report(args: &[&str]) -> (i32, Value) {
    let o = unireg(args);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn reduce_examples() {
    let ten = system("ten_relations.txt");
    let o = unireg(&["reduce", "--system", &ten, "w*t"]);
    assert_eq!(stdout(&o).trim(), "r*a");
    let o = unireg(&["reduce", "--system", &ten, "a*r*a*w"]);
    assert_eq!(stdout(&o).trim(), "a*w");
    let o = unireg(&["reduce", "--system", &system("square_zero.txt"), "x^2"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn reduce_trace_lists_steps() {
    let o = unireg(&["reduce", "--system", &system("ten_relations.txt"), "--trace", "t*w*t"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.len() >= 2, "{out}");
    assert!(lines[0].starts_with("step 1:"), "{out}");
    // t w t -> r a t -> t
    assert_eq!(*lines.last().unwrap(), "t");
}

#[test]
fn parse_errors_carry_positions() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("bad_system.txt");
    std::fs::write(&bad, "field: Q\nvars: a b\nrule: a*c -> b\n").unwrap();
    let o = unireg(&["reduce", "--system", bad.to_str().unwrap(), "a"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad_system.txt") && err.contains("3:"), "{err}");
}

#[test]
fn correspondence_on_z4_passes() {
    let (code, v) = report(&["run", "paper.correspondence", "--ring", "Z/4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["schema"], "unireg-report/1");
    assert_eq!(v["input"]["ring"], "Z/4");
    assert_eq!(v["result"]["rings"][0]["elements"], 4);
}

#[test]
fn fiftythree_reports_support() {
    let (code, v) = report(&["run", "paper.fiftythree", "--json"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["support"], 53);
    assert_eq!(v["result"]["uv_one"], true);
    assert_eq!(v["result"]["vu_one"], true);
}

#[test]
fn short_fiftythree_search_is_inconclusive() {
    let (code, v) = report(&["run", "paper.fiftythree", "--bound", "5", "--json"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "inconclusive");
}

#[test]
fn bergman_witness_radius_two() {
    let (code, v) = report(&["run", "paper.bergman-witness", "--radius", "2", "--json"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["input"]["radius"], 2);
}

#[test]
fn catalog_listing() {
    let o = unireg(&["list", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(!ids.is_empty());
    assert!(ids.contains(&"paper.powerreg-grid"));
    assert!(ids.contains(&"paper.degree-counterexample"));
    let mut sorted = ids.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    assert!(v.as_array().unwrap().iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["run", "paper.powerreg-grid", "--seed", "11", "--json"][..],
        &["run", "paper.infrastructure", "--seed", "3", "--json"][..],
    ] {
        let (_, a) = report(args);
        let (_, b) = report(args);
        let (a, b) = (without_timing(a), without_timing(b));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a["input"]["seed"], args[3].parse::<u64>().unwrap());
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let (_, a) = report(&["run", "paper.bergman-witness", "--radius", "1", "--json"]);
    let (_, b) = report(&["run", "paper.bergman-witness", "--radius", "1", "--json", "--sequential"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn exit_codes() {
    let (code, v) = report(&["run", "paper.ten-relations", "--ring", "Z/4", "--elem", "2", "--json"]);
    assert_eq!((code, v["status"].as_str()), (3, Some("inconclusive")));
    let (code, _) = report(&["run", "paper.ten-relations", "--ring", "M2(F2)", "--elem", "[[1,1],[0,0]]", "--json"]);
    assert_eq!(code, 0);

    let o = unireg(&["run", "paper.nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unireg list"));

    let o = unireg(&["run", "paper.diamond", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = unireg(&["run", "ring.scan"]);
    assert_eq!(o.status.code(), Some(2));
    let o = unireg(&["run", "ring.scan", "--ring", "Z/0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_reports_ordered_by_id() {
    let (code, v) = report(&["run", "paper.diamond", "paper.degree-counterexample", "--json"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|d| d["check"].as_str().unwrap()).collect();
    assert_eq!(ids, ["paper.degree-counterexample", "paper.diamond"]);
}

#[test]
fn ring_checks() {
    let (code, v) = report(&["run", "ring.scan", "--ring", "T2(F2)", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], 8);
    let (code, v) = report(&["run", "ring.decide", "--ring", "M2(F2)", "--elem", "[[0,1],[0,0]]", "--json"]);
    assert_eq!(code, 0);
    let verdicts: Vec<bool> = v["result"]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"].as_bool().unwrap())
        .collect();
    // a nilpotent a is strongly clean via e = 1, u = a - 1
    assert_eq!(verdicts[..4], [true, true, true, true]);
}

#[test]
fn diamond_command_reports_confluence() {
    let o = unireg(&["diamond", "--system", &system("powers4.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("confluent"));
}

#[test]
fn invsearch_finds_geometric_series() {
    let o = unireg(&["invsearch", "--system", &system("square_zero.txt"), "--bound", "2", "1 - x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x + 1"), "{}", stdout(&o));
}
