use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointless"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn construct_exit_codes() {
    let ok = run(&["construct", "--q", "7", "--g", "2"]);
    assert_eq!(code(&ok), 0);
    let doc = stdout_json(&ok);
    assert_eq!(doc["certificate"]["branch"], "LAST_GENUS");
    assert_eq!(doc["verification"]["n1"], 0);
    assert_eq!(doc["schema_version"], 1);

    let missing = run(&["construct", "--q", "13", "--g", "2"]);
    assert_eq!(code(&missing), 3);
    let msg = String::from_utf8_lossy(&missing.stderr);
    assert!(
        msg.contains("hasse_weil_min_genus = 2") && msg.contains("genus_bound = 5"),
        "{msg}"
    );

    assert_eq!(code(&run(&["construct", "--q", "6", "--g", "3"])), 2);
    assert_eq!(code(&run(&["construct", "--q", "7"])), 2);
    assert_eq!(
        code(&run(&[
            "construct",
            "--q",
            "7",
            "--g",
            "2",
            "--format",
            "yaml"
        ])),
        2
    );
}

#[test]
fn text_format() {
    let out = run(&["construct", "--q", "7", "--g", "2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("y^2 = 3*x^6 + 3"));
    assert!(text.contains("N1: 0"));
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&run(&["construct", "--q", "9", "--g", "5", "--out", p])),
        0
    );
    assert_eq!(code(&run(&["verify", p])), 0);

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let original = doc.clone();
    doc["curve"]["P"][0] = serde_json::json!([0, 1]);
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&run(&["verify", p])), 4);

    let mut doc = original.clone();
    doc["verification"]["n1"] = serde_json::json!(3);
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&run(&["verify", p])), 4);

    let mut doc = original.clone();
    doc["certificate"]["twist"] = serde_json::json!([2, 2]);
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&run(&["verify", p])), 4);

    // a bare curve object is accepted
    fs::write(&path, serde_json::to_string(&original["curve"]).unwrap()).unwrap();
    assert_eq!(code(&run(&["verify", p])), 0);
}

#[test]
fn verify_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let p = path.to_str().unwrap();
    for body in [
        "not json",
        "{}",
        r#"{"field": {"p": 7, "n": 1, "modulus": [0, 1]}, "Q": [], "P": [[9]], "genus": 2}"#,
        r#"{"field": {"p": 3, "n": 2, "modulus": [2, 0, 1]}, "Q": [], "P": [[1, 0]], "genus": 0}"#,
    ] {
        fs::write(&path, body).unwrap();
        assert_eq!(code(&run(&["verify", p])), 2, "{body}");
    }
    assert_eq!(code(&run(&["verify", "/nonexistent/curve.json"])), 2);
}

#[test]
fn verify_counts_over_extensions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&run(&["construct", "--q", "5", "--g", "3", "--out", p])),
        0
    );
    let out = run(&["verify", p, "--k", "1,2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let n2 = v["nk"]["2"].as_i64().unwrap();
    // |N2 - 26| <= 2 g sqrt(25)
    assert!((n2 - 26).abs() <= 30, "N2 = {n2}");
    assert_eq!(v["nk"]["1"], 0);
}

#[test]
fn census_output_is_independent_of_jobs() {
    let one = run(&["census", "--q", "5", "--g", "2", "--jobs", "1"]);
    let four = run(&["census", "--q", "5", "--g", "2", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let v = stdout_json(&one);
    assert!(v["pointless_count"].as_u64().unwrap() > 0);
    assert!(v.get("wall_time").is_none());

    let timed = stdout_json(&run(&["census", "--q", "3", "--g", "2", "--timing"]));
    assert!(timed["wall_time"].is_number());

    let f13 = stdout_json(&run(&["census", "--q", "13", "--g", "2"]));
    assert_eq!(f13["pointless_count"], 0);
    assert!(f13["first_pointless"].is_null());

    assert_eq!(code(&run(&["census", "--q", "13", "--g", "9"])), 2);
    assert_eq!(
        code(&run(&["census", "--q", "5", "--g", "2", "--jobs", "0"])),
        2
    );
}

#[test]
fn bounds_table() {
    let out = run(&["bounds", "--q-max", "13"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "13\t2\t5"));
    assert!(text.lines().any(|l| l == "8\t2\t7"));
    assert!(!text.lines().any(|l| l.starts_with("6\t")));
    assert_eq!(code(&run(&["bounds", "--q-max", "1"])), 2);
}
