//! Drives the installed binary end to end through temp files: generation,
//! solving, verification, the reduction round trip, and error reporting.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn workdir(test: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(test);
    fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect()
}

fn mtip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn mtip_ok(args: &[&str]) -> Value {
    let out = mtip(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    if out.stdout.iter().all(u8::is_ascii_whitespace) {
        return Value::Null; // everything went to --out
    }
    serde_json::from_slice(&out.stdout).unwrap_or_else(|err| {
        panic!(
            "{args:?} wrote unparseable output ({err}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn mtip_err(args: &[&str]) -> String {
    let out = mtip(args);
    assert_eq!(out.status.code(), Some(1), "{args:?} should fail");
    let report: Value =
        serde_json::from_slice(&out.stderr).expect("failures are reported as JSON on stderr");
    report["error"].as_str().expect("error message").to_string()
}

#[test]
fn line_pipeline_round_trips() {
    let dir = workdir("line_pipeline");
    let line = dir.join("line.json");
    let sol = dir.join("sol.json");
    let edges = dir.join("edges.json");

    mtip_ok(&[
        "gen", "--kind", "line", "--n", "9", "--seed", "3",
        "--out", line.to_str().unwrap(),
    ]);
    let report = mtip_ok(&[
        "solve1d", line.to_str().unwrap(),
        "--edges-out", edges.to_str().unwrap(),
        "--out", sol.to_str().unwrap(),
    ]);
    // --out and stdout were both requested? No: --out wins, stdout is empty.
    assert!(report.is_null() || report.is_object());

    let sol_doc: Value = serde_json::from_str(&fs::read_to_string(&sol).unwrap()).unwrap();
    let total = sol_doc["total"].as_u64().unwrap();
    assert!(total >= 9, "nine points need at least nine edges");
    assert_eq!(sol_doc["ranges"].as_array().unwrap().len(), 9);

    let edge_doc: Value = serde_json::from_str(&fs::read_to_string(&edges).unwrap()).unwrap();
    assert!(!edge_doc["edges"].as_array().unwrap().is_empty());

    // The solve report doubles as an assignment document.
    let verdict = mtip_ok(&["verify", line.to_str().unwrap(), sol.to_str().unwrap()]);
    assert_eq!(verdict["valid"], Value::Bool(true));
    assert_eq!(verdict["total"].as_u64().unwrap(), total);

    let brute = mtip_ok(&[
        "oracle", line.to_str().unwrap(), "--budget", "200000000",
    ]);
    assert_eq!(brute["total"].as_u64().unwrap(), total);
}

#[test]
fn solve1d_reports_file_order() {
    let dir = workdir("file_order");
    let inst = dir.join("unsorted.json");
    fs::write(&inst, r#"{"dim": 1, "points": [[2.0], [0.0], [1.0]]}"#).unwrap();
    let report = mtip_ok(&["solve1d", inst.to_str().unwrap()]);
    assert_eq!(report["total"].as_u64().unwrap(), 4);
    // The middle coordinate sits at file position 2; every range is 1.
    let ranges: Vec<f64> = report["ranges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(ranges, vec![1.0, 1.0, 1.0]);
}

#[test]
fn gadget_cycle_round_trips() {
    let dir = workdir("gadget_cycle");
    let inst = dir.join("gadget.json");
    let ham = dir.join("ham.json");

    mtip_ok(&[
        "gen", "--kind", "gadget",
        "--grid", fixture("grid_2x3.json").to_str().unwrap(),
        "--cycle", fixture("cycle_2x3.json").to_str().unwrap(),
        "--assignment-out", ham.to_str().unwrap(),
        "--out", inst.to_str().unwrap(),
    ]);
    let verdict = mtip_ok(&["verify", inst.to_str().unwrap(), ham.to_str().unwrap()]);
    assert_eq!(verdict["valid"], Value::Bool(true));
    assert_eq!(verdict["total"].as_u64().unwrap(), 54);
    assert_eq!(verdict["extraction_failure"], Value::Null);
    let cycle: Vec<u64> = verdict["cycle"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(cycle, vec![0, 1, 2, 5, 4, 3]);
}

#[test]
fn grid_generation_matches_requested_shape() {
    let grid = mtip_ok(&["gen", "--kind", "grid", "--grid-size", "3x2"]);
    assert_eq!(grid["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(grid["edges"].as_array().unwrap().len(), 7);

    let msg = mtip_err(&["gen", "--kind", "grid", "--grid-size", "3by2"]);
    assert!(msg.contains("3by2"), "message names the bad value: {msg}");
}

#[test]
fn approx_policies_agree_on_structure() {
    let dir = workdir("approx_policies");
    let inst = dir.join("plane.json");
    let ranges = dir.join("approx.json");
    mtip_ok(&[
        "gen", "--kind", "plane", "--n", "12", "--seed", "5",
        "--out", inst.to_str().unwrap(),
    ]);

    let best = mtip_ok(&[
        "approx2d", inst.to_str().unwrap(),
        "--root-policy", "best", "--out", ranges.to_str().unwrap(),
    ]);
    assert!(best.is_null());
    let best: Value = serde_json::from_str(&fs::read_to_string(&ranges).unwrap()).unwrap();
    let first = mtip_ok(&["approx2d", inst.to_str().unwrap(), "--root-policy", "first"]);
    let fixed = mtip_ok(&["approx2d", inst.to_str().unwrap(), "--root-policy", "fixed:4"]);

    for report in [&best, &first, &fixed] {
        assert_eq!(
            report["total"].as_u64().unwrap(),
            report["broadcast"].as_u64().unwrap() + report["sink"].as_u64().unwrap()
        );
        assert_eq!(report["ranges"].as_array().unwrap().len(), 12);
    }
    assert_eq!(first["root"].as_u64().unwrap(), 0);
    assert_eq!(fixed["root"].as_u64().unwrap(), 4);
    assert!(best["total"].as_u64().unwrap() <= first["total"].as_u64().unwrap());

    // The approximation report is itself a usable assignment document, and
    // the measured interference survives the file round trip unchanged.
    let verdict = mtip_ok(&["verify", inst.to_str().unwrap(), ranges.to_str().unwrap()]);
    assert_eq!(verdict["valid"], Value::Bool(true));
    assert_eq!(
        verdict["total"].as_u64().unwrap(),
        best["total"].as_u64().unwrap()
    );

    let msg = mtip_err(&["approx2d", inst.to_str().unwrap(), "--root-policy", "median"]);
    assert!(msg.contains("median"));
}

#[test]
fn export_dot_names_file_positions() {
    let dir = workdir("export_dot");
    let inst = dir.join("line.json");
    let ranges = dir.join("unit.json");
    fs::write(&inst, r#"{"dim": 1, "points": [[0.0], [1.0], [2.0]]}"#).unwrap();
    fs::write(&ranges, r#"{"ranges": [1.0, 1.0, 1.0]}"#).unwrap();
    let out = mtip(&["export-dot", inst.to_str().unwrap(), ranges.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("0 -> 1;"));
    assert!(dot.contains("1 -> 0;"));
    assert!(dot.contains("1 -> 2;"));
    assert!(dot.contains("2 -> 1;"));
    assert!(!dot.contains("0 -> 2;"), "unit range must not span two hops");
}

#[test]
fn failures_are_json_on_stderr() {
    let dir = workdir("failures");
    let missing = dir.join("nope.json");
    let msg = mtip_err(&["solve1d", missing.to_str().unwrap()]);
    assert!(msg.contains("nope.json"), "message names the path: {msg}");

    let plane = dir.join("plane.json");
    fs::write(&plane, r#"{"dim": 2, "points": [[0.0, 0.0], [1.0, 1.0]]}"#).unwrap();
    let msg = mtip_err(&["solve1d", plane.to_str().unwrap()]);
    assert!(msg.contains("one-dimensional"), "{msg}");

    let short = dir.join("short.json");
    fs::write(&short, r#"{"ranges": [1.0]}"#).unwrap();
    let msg = mtip_err(&["verify", plane.to_str().unwrap(), short.to_str().unwrap()]);
    assert!(msg.contains("2 points but 1 ranges"), "{msg}");

    let garbled = dir.join("garbled.json");
    fs::write(&garbled, "{not json").unwrap();
    mtip_err(&["solve1d", garbled.to_str().unwrap()]);

    let spread = dir.join("spread.json");
    fs::write(
        &spread,
        r#"{"dim": 2, "points": [[0.0, 0.0], [1.0, 0.0], [3.0, 1.0], [0.0, 5.0], [9.0, 2.0]]}"#,
    )
    .unwrap();
    let msg = mtip_err(&["oracle", spread.to_str().unwrap(), "--budget", "2"]);
    assert!(msg.contains("budget"), "{msg}");
}

#[test]
fn gadget_without_cycle_emits_instance_only() {
    let inst = mtip_ok(&["gen", "--kind", "gadget", "--grid-size", "2x2"]);
    assert_eq!(inst["dim"].as_u64().unwrap(), 2);
    assert_eq!(inst["points"].as_array().unwrap().len(), 20);

    let msg = mtip_err(&["gen", "--kind", "gadget"]);
    assert!(msg.contains("--grid"), "{msg}");
}
