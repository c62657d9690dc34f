use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../crown_lab/fixtures")
        .join(format!("{name}.json"))
}

fn crown_lab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_crown-lab"))
        .args(args)
        .env("CROWN_LAB_JOBS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    let mut pipe = child.stdin.take().expect("stdin");
    pipe.write_all(stdin.unwrap_or("").as_bytes())
        .expect("write stdin");
    drop(pipe);
    child.wait_with_output().expect("binary finishes")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Triangle 1 2 3 with an interior vertex 4 joined to all three.
fn k4_document(lists: Value, coloring: Value) -> String {
    json!({
        "rotation": {"1": [2, 4, 3], "2": [3, 4, 1], "3": [1, 4, 2], "4": [1, 2, 3]},
        "outer": [1, 2, 3],
        "lists": lists,
        "path": [1, 2, 3],
        "coloring": coloring,
    })
    .to_string()
}

#[test]
fn fig10_fixture_passes() {
    let out = crown_lab(&["fixture", "fig10"], None);
    assert_eq!(code(&out), 0);
    let body = json_of(&out);
    assert_eq!(body["passed"], true);
    assert_eq!(body["crown"], json!([]));
}

#[test]
fn fig7_fixture_reports_its_verdicts() {
    let out = crown_lab(&["fixture", "fig7"], None);
    let body = json_of(&out);
    let verdicts = body["verdicts"].as_array().expect("verdict list");
    assert!(!verdicts.is_empty());
    let all_not_base = verdicts.iter().all(|v| v["case"] == "none");
    assert_eq!(body["passed"], all_not_base);
    assert_eq!(code(&out), if all_not_base { 0 } else { 1 });
}

#[test]
fn unknown_fixture_is_invalid_input() {
    let out = crown_lab(&["fixture", "fig3"], None);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn sampled_runs_need_a_seed() {
    let out = crown_lab(
        &["verify", "main", "--mode", "sampled", "--samples", "5"],
        None,
    );
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_theorem_is_invalid_input() {
    let out = crown_lab(&["verify", "thm99", "--max-n", "5"], None);
    assert_eq!(code(&out), 2);
}

#[test]
fn sampled_verify_prints_a_passing_report() {
    let args = [
        "verify",
        "main",
        "--mode",
        "sampled",
        "--samples",
        "50",
        "--max-n",
        "8",
        "--seed",
        "3",
    ];
    let first = crown_lab(&args, None);
    assert_eq!(code(&first), 0);
    let body = json_of(&first);
    assert_eq!(body["theorem"], "main");
    assert_eq!(body["seed"], 3);
    assert_eq!(body["violation_count"], 0);
    assert_eq!(first.stdout, crown_lab(&args, None).stdout);
}

#[test]
fn violations_exit_with_one() {
    let out = crown_lab(&["verify", "T4", "--max-n", "6"], None);
    assert_eq!(code(&out), 1);
    let body = json_of(&out);
    assert!(body["violation_count"].as_u64().unwrap() > 0);
    assert!(!body["violations"].as_array().unwrap().is_empty());
}

#[test]
fn t_runs_all_four_parts() {
    let out = crown_lab(&["verify", "T", "--max-n", "5"], None);
    let body = json_of(&out);
    let names: Vec<&str> = body
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["theorem"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["T1", "T2", "T3", "T4"]);
}

#[test]
fn solve_reads_stdin() {
    let doc = k4_document(
        json!({"1": [0, 1], "2": [1, 2], "3": [0, 2], "4": [0, 1, 2, 3]}),
        json!({}),
    );
    let out = crown_lab(&["solve"], Some(&doc));
    assert_eq!(code(&out), 0);
    let body = json_of(&out);
    assert_eq!(body["extends"], true);
    assert_eq!(body["coloring"]["4"], 3);

    let blocked = k4_document(
        json!({"1": [0], "2": [1], "3": [2], "4": [0, 1, 2]}),
        json!({}),
    );
    let body = json_of(&crown_lab(&["solve", "-"], Some(&blocked)));
    assert_eq!(body["extends"], false);
    assert_eq!(body["coloring"], Value::Null);
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(code(&crown_lab(&["solve"], Some("{not json"))), 2);
    let bad_rotation =
        json!({"rotation": {"1": [2], "2": [3], "3": [1]}, "outer": [1, 2, 3]}).to_string();
    assert_eq!(code(&crown_lab(&["solve"], Some(&bad_rotation))), 2);
}

#[test]
fn lambda_on_a_two_path() {
    let doc = k4_document(
        json!({"1": [0, 1], "2": [0, 1, 2, 3], "3": [0, 1], "4": [0, 1, 2, 3]}),
        json!({}),
    );
    let out = crown_lab(
        &["lambda", "--free", "middle", "--fixed", "0,1"],
        Some(&doc),
    );
    assert_eq!(code(&out), 0);
    // 2 takes a color other than 0 and 1 that leaves one for 4
    assert_eq!(json_of(&out)["lambda"], json!([2, 3]));
    let out = crown_lab(&["lambda", "--fixed", "5,1"], Some(&doc));
    assert_eq!(code(&out), 2);
}

#[test]
fn crown_end_and_base_on_the_fixtures() {
    let fig10 = fixture_path("fig10");
    let fig10 = fig10.to_str().unwrap();
    let crown = json_of(&crown_lab(&["crown", fig10], None));
    assert_eq!(crown["count"], 0);
    let end = crown_lab(&["end", fig10], None);
    assert_eq!(code(&end), 0);
    assert!(json_of(&end)["end"].is_array());

    let fig7 = fixture_path("fig7");
    let fig7 = fig7.to_str().unwrap();
    let base = json_of(&crown_lab(&["base", fig7], None));
    assert!(!base["verdicts"].as_array().unwrap().is_empty());
    let obstructions = crown_lab(&["obstructions", fig7], None);
    assert_eq!(code(&obstructions), 0);
    assert!(json_of(&obstructions)["obstructions"].is_array());
    let tilt = json_of(&crown_lab(&["tilt", fig7], None));
    assert_eq!(tilt["tilts"].as_array().unwrap().len(), 2);
    assert_eq!(code(&crown_lab(&["tilt", fig10], None)), 2);
}

#[test]
fn crown_membership_for_a_given_coloring() {
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture_path("fig10")).unwrap()).unwrap();
    let p0 = doc["path"][0].clone();
    let color = doc["lists"][p0.to_string()][0].clone();
    doc["coloring"] = json!({ p0.to_string(): color });
    let body = json_of(&crown_lab(&["crown"], Some(&doc.to_string())));
    assert_eq!(body["member"], false);
    assert_eq!(body["domain_ok"], false);
}

#[test]
fn classify_a_wheel() {
    let rotation = json!({
        "0": [1, 5, 4], "1": [2, 5, 0], "2": [3, 5, 1], "3": [4, 5, 2], "4": [0, 5, 3], "5": [0, 1, 2, 3, 4]
    });
    let doc = json!({
        "rotation": rotation,
        "outer": [0, 1, 2, 3, 4],
        "lists": {"0": [0], "1": [1], "2": [2], "3": [3], "4": [4], "5": [0, 1, 2, 3, 4]},
        "coloring": {"0": 0, "1": 1, "2": 2, "3": 3, "4": 4},
    });
    let out = crown_lab(&["classify"], Some(&doc.to_string()));
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out), json!({"kind": "hub", "vertex": 5}));
}
