use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexmod")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn factors(v: &Value) -> Vec<String> {
    v["invariant_factors"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn circle_pipelines_agree() {
    let out = run(&["alexander", data("circle.json").to_str().unwrap(), "--degree", "1", "--via", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "alexmod/1");
    assert_eq!(v["pipelines_agree"], true);
    assert_eq!(factors(&v["torsion"]), vec!["t - 1"]);
}

#[test]
fn trefoil_each_pipeline() {
    for via in ["snf", "psi"] {
        let out = run(&["alexander", data("trefoil.json").to_str().unwrap(), "--degree", "2", "--via", via]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(factors(&json(&out)["torsion"]), vec!["t^2 - t + 1"], "{via}");
    }
}

#[test]
fn degree_out_of_range_is_a_math_error() {
    let out = run(&["alexander", data("circle.json").to_str().unwrap(), "--degree", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "DegreeOutOfRange");
}

#[test]
fn central_hodge_report() {
    let out = run(&["arrangement", data("central3.json").to_str().unwrap(), "--report", "hodge"]);
    assert_eq!(out.status.code(), Some(0));
    let h = &json(&out)["hodge"];
    assert_eq!((h["h11"].as_u64(), h["h10"].as_u64(), h["h01"].as_u64()), (Some(2), Some(1), Some(1)));

    let out = run(&["arrangement", data("central3.json").to_str().unwrap(), "--report", "hodge", "--delta", "closed-form"]);
    assert_eq!(json(&out)["hodge"]["provenance"], "closed-form");
}

#[test]
fn deleted_arrangement() {
    let out = run(&["arrangement", data("deleted.json").to_str().unwrap(), "--report", "hodge"]);
    let v = json(&out);
    assert_eq!(v["betti"], serde_json::json!([1, 5, 6]));
    assert_eq!(v["hodge"]["h11"], 4);
    assert_eq!(v["hodge"]["h10"], 1);
    assert_eq!(v["purity"]["applies"], false);

    let out = run(&["arrangement", data("deleted.json").to_str().unwrap(), "--delta", "closed-form"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "NoPresentation");
}

#[test]
fn user_supplied_delta() {
    let out = run(&["arrangement", data("central3.json").to_str().unwrap(), "--report", "hodge", "--delta-value", "t^3-3t^2+3t-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "InconsistentFixedPart");

    let out = run(&["arrangement", data("central3.json").to_str().unwrap(), "--report", "hodge", "--delta-value", "t^2-2t+1"]);
    let v = json(&out);
    assert_eq!(v["hodge"]["provenance"], "user-supplied");
    assert_eq!(v["hodge"]["pure"], true);
}

#[test]
fn parallel_lines_are_not_essential() {
    let out = run(&["arrangement", data("parallel.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "NotEssential");
}

#[test]
fn roots_check_fails_on_non_unity() {
    let out = run(&["check", data("non_unity.json").to_str().unwrap(), "--suite", "roots"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"], "NotRootsOfUnity");
    assert_eq!(v["checks"]["roots"]["offending"], "t - 2");
}

#[test]
fn full_check_suite() {
    let out = run(&[
        "check",
        data("cyclic.json").to_str().unwrap(),
        "--suite",
        "jordan,roots,semisimple",
        "--degree",
        "1",
        "--dim",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"]["jordan"]["bound"], 1);
    assert_eq!(v["checks"]["semisimple"]["ok"], true);

    let out = run(&["check", data("cyclic.json").to_str().unwrap(), "--suite", "jordan"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thicken_circle_and_heisenberg() {
    let out = run(&["thicken", data("circle_cdga.json").to_str().unwrap(), "--eta", "1", "-m", "3", "--checks"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(factors(&v["degrees"][1]["torsion"]), vec!["t - 1"]);
    assert_eq!(v["failures"], serde_json::json!([]));

    let out = run(&["thicken", data("heisenberg.json").to_str().unwrap(), "--eta", "1,0,0", "-m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(factors(&json(&out)["degrees"][2]["torsion"]), vec!["t^2 - 2*t + 1"]);
}

#[test]
fn thicken_rejects_bad_directions() {
    let out = run(&["thicken", data("heisenberg.json").to_str().unwrap(), "--eta", "0,0,1", "-m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "NotClosed");

    let out = run(&["thicken", data("heisenberg.json").to_str().unwrap(), "--eta", "1,x", "-m", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two() {
    let out = run(&["alexander", data("non_unity.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "Parse");
    let out = run(&["alexander", data("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["arrangement", data("deleted.json").to_str().unwrap(), "--report", "hodge"].map(String::from);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn fixture_listing() {
    let out = run(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    let names = json(&out)["fixtures"].as_array().unwrap().len();
    assert_eq!(names, 7);
}
