use std::path::PathBuf;
use std::process::{Command, Output};

use nefstab::preset;
use nefstab::ring::RingDocument;
use serde_json::Value;

fn nefstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nefstab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nefstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn presets_are_listed_with_euler_characteristics() {
    let out = nefstab(&["presets"]);
    assert!(out.status.success());
    let v = json(&out);
    let list = v["presets"].as_array().unwrap();
    assert_eq!(list.len(), 8);
    let chi = |name: &str| list.iter().find(|p| p["name"] == name).unwrap()["chi(O_X)"].clone();
    assert_eq!(chi("PT_P2"), "1");
    assert_eq!(chi("P3"), "1");
    assert_eq!(chi("P1xAbelianSurface"), "0");
}

#[test]
fn eval_line_bundle_on_flag_threefold() {
    let out = nefstab(&["eval", "--class", "O(1,0)"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["ring"], "PT_P2");
    assert_eq!(v["v"], serde_json::json!(["6", "3", "1/2", "0"]));
    assert_eq!(v["delta_bar"], "3");
    assert_eq!(v["nu"], "-1/6");
    assert_eq!(v["Z"]["re"], "3/2");
    assert_eq!(v["Z"]["im"], "-1/2");
}

#[test]
fn eval_point_and_twisted_slope() {
    let v = json(&nefstab(&["--ring", "P3", "eval", "--class", "pt"]));
    assert_eq!(v["Z"]["re"], "-1");
    assert_eq!(v["Z"]["im"], "0");
    let v = json(&nefstab(&["--ring", "PT_P2", "--alpha", "1/2", "eval", "--class", "O(1,0)"]));
    // v = (3/4, 3/4, 1/4, 0), so nu = (1/4 - 1/8) / (3/4)
    assert_eq!(v["nu"], "1/6");
}

#[test]
fn beta_bar_of_o2_on_p3() {
    let out = nefstab(&["--ring", "P3", "beta-bar", "--class", "O(2)"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["bms"]["beta_bar"], "2");
}

#[test]
fn json_flag_writes_the_same_report() {
    let path = scratch("eval.json");
    let out = nefstab(&["--json", path.to_str().unwrap(), "eval", "--class", "O"]);
    assert!(out.status.success());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json(&out));
}

#[test]
fn split_counts_summands() {
    let out = nefstab(&["split", "--case", "p1a", "--m", "2", "--a", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rank"], 4);
    let total: u64 = v["summands"].as_array().unwrap().iter().map(|s| s["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 4);
    assert!(v["statement_convention"].is_string());
}

#[test]
fn walls_are_deterministic_and_plot_one_curve() {
    let svg = scratch("walls.svg");
    let args = ["--ring", "P3", "--H", "1", "--svg", svg.to_str().unwrap(), "walls", "--E", "O", "--F", "O(1)"];
    let first = nefstab(&args);
    assert!(first.status.success());
    let second = nefstab(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert_eq!(text.matches("<polyline").count(), 1);
}

#[test]
fn walls_between_equal_classes_are_degenerate() {
    let out = nefstab(&["--ring", "P3", "--H", "1", "walls", "--E", "O", "--F", "O"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["diagram"]["degenerate"], true);
}

#[test]
fn ptp2_verify_passes_at_one_third() {
    let out = nefstab(&["ptp2", "verify", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_conventions_pass"], true);
    assert_eq!(v["skyscraper_dimension_vector"], serde_json::json!([1, 2, 1, 1, 2, 1]));
}

#[test]
fn ptp2_verify_refuses_other_rings() {
    let out = nefstab(&["--ring", "P3", "ptp2", "verify", "--a", "1", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_filter_runs_only_its_criteria() {
    let out = nefstab(&["verify-all", "--suite", "ptp2"]);
    let v = json(&out);
    let ids: Vec<&str> = v["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["2", "7", "8", "9a", "9b"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 5);
    assert_eq!(out.status.code(), Some(if v["passed"] == true { 0 } else { 1 }));
}

#[test]
fn corrupted_custom_ring_fails_the_axioms() {
    let doc = RingDocument::from_threefold(&preset("PT_P2").unwrap()).to_json();
    let mut v: Value = serde_json::from_str(&doc).unwrap();
    v["name"] = "broken".into();
    v["div_curve"][0][1] = "2".into();
    let path = scratch("broken.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = nefstab(&["--ring", path.to_str().unwrap(), "verify-all", "--suite", "ring"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let c1 = r["criteria"].as_array().unwrap().iter().find(|c| c["id"] == "1").unwrap();
    assert_eq!(c1["verdict"], false);
    let witnesses = c1["details"]["failure_witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    assert!(witnesses.iter().all(|w| w["ring"] == "broken"));
}

#[test]
fn exit_codes() {
    assert_eq!(nefstab(&["--ring", "P3", "hodge-chain", "--D", "1"]).status.code(), Some(0));
    assert_eq!(nefstab(&["--ring", "P3", "bg-check", "--class", "O(1)"]).status.code(), Some(0));
    assert_eq!(nefstab(&["--ring", "P3", "eval", "--class", "O(1,2)"]).status.code(), Some(2));
    assert_eq!(nefstab(&["--ring", "nowhere.json", "eval", "--class", "O"]).status.code(), Some(2));
}

#[test]
fn parse_errors_report_columns() {
    let out = nefstab(&["eval", "--class", "O(1)"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("column 3"), "{stderr}");
}
