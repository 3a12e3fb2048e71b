use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run_with(threads: &str, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_deltaform"));
    cmd.env("DELTAFORM_THREADS", threads);
    for a in args {
        if a.ends_with(".json") && !a.starts_with('/') {
            cmd.arg(corpus(a));
        } else {
            cmd.arg(a);
        }
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with("1", args)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn wedge_both_matches_on_the_line() {
    let o = run(&["wedge", "--method", "both", "line.json", "line.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "match");
    let point = run(&["wedge", "--method", "diagonal", "point.json", "plane.json"]);
    assert_eq!(json(&point), v["diagonal"]);
}

#[test]
fn unbalanced_line_exits_with_residue() {
    let o = run(&["check-balance", "line_112.json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"], "unbalanced");
    let failure = &v["certificate"]["failures"][0];
    for r in failure["residue"].as_array().unwrap() {
        assert_eq!(r["terms"][0]["poly"][0]["c"], "1/1");
    }
    assert_eq!(run(&["check-balance", "line.json"]).status.code(), Some(0));
}

#[test]
fn stokes_on_the_interval() {
    let v = json(&run(&["stokes-check", "ex29.json"]));
    assert_eq!((v["lhs"].as_str(), v["rhs"].as_str(), v["equal"].as_bool()), (Some("1/1"), Some("1/1"), Some(true)));
    let v = json(&run(&["stokes-check", "--side", "second", "ex29_second.json"]));
    assert_eq!((v["lhs"].as_str(), v["equal"].as_bool()), (Some("-1/1"), Some(true)));
}

#[test]
fn pairing_and_integration() {
    let v = json(&run(&["eval", "--window", "window.json", "line.json", "eta.json"]));
    assert_eq!(v["value"], "45/1");
    let v = json(&run(&["integrate", "interval_top.json"]));
    assert_eq!(v["value"], "1/1");
    assert_eq!(run(&["integrate", "ex29.json"]).status.code(), Some(2));
}

#[test]
fn non_generic_vector_is_a_precondition_failure() {
    let o = run(&["wedge", "--method", "displacement", "--vector", "1,1", "line.json", "line.json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"], "not-generic");
    assert!(v["certificate"]["first"].is_object());
}

#[test]
fn malformed_input_exits_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["apply", "--op", "dP3", "line.json"]).status.code(), Some(1));
    assert_eq!(run(&["wedge", "--vector", "1,x", "line.json", "line.json"]).status.code(), Some(1));
    assert_eq!(run(&["check-balance", "projection.json"]).status.code(), Some(1));
    assert_eq!(run(&["check-balance", "missing.json"]).status.code(), Some(1));
    assert_eq!(run_with("zero", &["check-balance", "line.json"]).status.code(), Some(1));
}

#[test]
fn maps_dispatch_by_surjectivity() {
    let v = json(&run(&["pullback", "--map", "axis_embedding.json", "line.json"]));
    assert_eq!(v["n"], 1);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    let o = run(&["pushforward", "--map", "shear.json", "line.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["pushforward", "--map", "projection.json", "line.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn apply_and_divisor() {
    let o = run(&["apply", "--op", "d1", "line.json"]);
    assert_eq!(json(&o)["terms"].as_array().unwrap().len(), 0);
    let l = run(&["divisor", "--phi", "hyperplane.json", "plane.json"]);
    let v = json(&l);
    assert_eq!(v, json(&run(&["wedge", "--method", "diagonal", "line.json", "plane.json"])));
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let cases: [&[&str]; 4] = [
        &["wedge", "--method", "both", "line.json", "line_shifted.json"],
        &["divisor", "--phi", "conic.json", "plane.json"],
        &["apply", "--op", "bd2", "ex29.json"],
        &["check-balance", "line_112.json"],
    ];
    for args in cases {
        let first = run_with("1", args);
        for threads in ["1", "4"] {
            let again = run_with(threads, args);
            assert_eq!(first.stdout, again.stdout, "{args:?} with {threads} threads");
            assert_eq!(first.status.code(), again.status.code());
        }
    }
}
