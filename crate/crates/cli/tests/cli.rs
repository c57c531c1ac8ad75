use std::process::{Command, Output};

use flagvec::{FlagVector, Form};
use serde_json::Value;

fn flagvec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagvec")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = flagvec(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn generate_examples() {
    assert_eq!(stdout(&["generate", "cyclic", "-d", "5", "-n", "8", "--format", "csv"]), "f0,f1,f2,f3,f4\n8,28,52,50,20\n");
    assert!(stdout(&["generate", "p7n", "-n", "8"]).ends_with("\n15,56,112,140,112,56,15\n"));
    assert!(stdout(&["generate", "simplex", "-d", "6"]).ends_with("\n7,21,35,35,21,7\n"));
    let doc = json(&["generate", "cube", "-d", "3", "--dual", "--format", "json"]);
    assert_eq!(doc["f"], serde_json::json!(["6", "12", "8"]));
}

#[test]
fn generate_rejects_bad_parameters() {
    assert_eq!(flagvec(&["generate", "cyclic", "-d", "5", "-n", "5"]).status.code(), Some(2));
    assert_eq!(flagvec(&["generate", "cyclic", "-d", "5"]).status.code(), Some(2));
    assert_eq!(flagvec(&["generate", "p7n", "-n", "7"]).status.code(), Some(2));
}

#[test]
fn face_bound_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_flagvec"))
        .args(["generate", "cube", "-d", "4"])
        .env("FLAGVEC_MAX_FACES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_flagvec"))
        .args(["generate", "cube", "-d", "4"])
        .env("FLAGVEC_MAX_FACES", "100")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn connected_sum_warns_on_unknown_inputs() {
    let out = flagvec(&["generate", "connected-sum", "--left", "simplex:3", "--right", "simplex:3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("7,12,7\n"));
    assert!(out.stderr.is_empty());
    let out = flagvec(&["generate", "connected-sum", "--left", "v:4,6,4", "--right", "cube:3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let p = stdout(&["generate", "connected-sum", "--left", "cyclic:7:9", "--right", "cyclic-dual:7:9"]);
    let q = stdout(&["generate", "p7n", "-n", "9"]);
    assert_eq!(p, q);
}

#[test]
fn check_reports_verdicts() {
    let doc = json(&["check", "8,28,52,50,20"]);
    let p = &doc["properties"];
    assert_eq!(p["C"]["holds"], false);
    assert_eq!(p["C"]["witness"], 1);
    assert_eq!(p["L"]["holds"], true);
    assert_eq!(p["U"]["holds"], true);
    assert_eq!(p["B"]["holds"], true);

    let doc = json(&["check", "32,141,130,75,81,27"]);
    assert_eq!(doc["properties"]["U"]["holds"], false);
    assert_eq!(doc["properties"]["U"]["witness"], 3);
}

#[test]
fn check_exit_codes() {
    assert_eq!(flagvec(&["check", "1,1"]).status.code(), Some(2));
    assert_eq!(flagvec(&["check", "8,x,52"]).status.code(), Some(2));
    assert_eq!(flagvec(&["check", "8,28,52,50,20", "-d", "4"]).status.code(), Some(2));
    // a failing verdict is still a successful run
    assert_eq!(flagvec(&["check", "22,111,110,35,21,7"]).status.code(), Some(0));
}

#[test]
fn check_reads_files() {
    let dir = std::env::temp_dir().join(format!("flagvec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let plain = dir.join("f.txt");
    std::fs::write(&plain, "8,28,52,50,20\n").unwrap();
    let doc = json(&["check", &format!("@{}", plain.display())]);
    assert_eq!(doc["d"], 5);
    let js = dir.join("f.json");
    std::fs::write(&js, r#"{"d": 3, "f": ["4", 6, "4"]}"#).unwrap();
    let doc = json(&["check", &format!("@{}", js.display())]);
    assert_eq!(doc["properties"]["C"]["holds"], true);
    assert_eq!(flagvec(&["check", "@/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn flags_round_trip_and_completion() {
    let full = json(&["flags", "cyclic", "-d", "5", "-n", "8"]);
    let v = FlagVector::from_json(&full).unwrap();
    assert_eq!(v.to_json(), full);
    assert_eq!(full["entries"]["0"], "8");

    let sparse = stdout(&["flags", "cyclic", "-d", "5", "-n", "8", "--sparse"]);
    let path = std::env::temp_dir().join(format!("flagvec-sparse-{}.json", std::process::id()));
    std::fs::write(&path, &sparse).unwrap();
    let completed = json(&["flags", "--complete", path.to_str().unwrap()]);
    assert_eq!(completed, full);
}

#[test]
fn cdindex_examples() {
    assert_eq!(stdout(&["cdindex", "polygon", "-n", "5"]).lines().next(), Some("c^2 + 3d"));
    assert_eq!(stdout(&["cdindex", "simplex", "-d", "3"]).lines().next(), Some("c^3 + 2dc + 2cd"));
    assert_eq!(stdout(&["cdindex", "cyclic", "-d", "6", "-n", "10", "--coeff", "c2dc2"]), "83\n");
    let doc = json(&["cdindex", "cube", "-d", "3", "--toric", "--format", "json"]);
    assert_eq!(doc["toric_g"], serde_json::json!(["1", "4"]));
    assert_eq!(stdout(&["cdindex", "--symbolic", "-d", "7", "--coeff", "c^2dc^3"]), "f_0 - f_1 + f_2 - 2\n");
    assert_eq!(flagvec(&["cdindex", "simplex", "-d", "3", "--coeff", "c2"]).status.code(), Some(2));
}

#[test]
fn convolve_examples() {
    assert_eq!(stdout(&["convolve", "0:1", "0:1"]), "f_0\n");
    let out = stdout(&["convolve", "1:1", "2:f_0 - 3"]);
    assert_eq!(out, "-3f_1 + f_12\n");
    let doc = json(&["convolve", "g1:2", "g1:2", "--on", "simplex:5", "--format", "json"]);
    assert_eq!(doc["value_by_index"], "0");
    assert_eq!(doc["value_by_faces"], "0");
    let form = Form::from_json(&doc).unwrap();
    assert_eq!(form.to_json()["coeffs"], doc["coeffs"]);
    let out = stdout(&["convolve", "g0:1", "g1:2", "g0:0", "--reduce", "--on", "cyclic:5:8"]);
    assert_eq!(out, "-6f_1 + 3f_02 - f_13\nvalue by index shift = 0, by face sum = 0\n");
}

#[test]
fn candidates_report() {
    let doc = json(&["candidates", "7d"]);
    assert_eq!(doc["f"][6], "134");
    assert_eq!(doc["battery_holds"], true);
    assert_eq!(doc["properties"]["B"]["holds"], false);
    let docs = json(&["candidates", "6d", "--ell", "0..10"]);
    let docs = docs.as_array().unwrap();
    assert_eq!(docs.len(), 11);
    for (ell, d) in docs.iter().enumerate() {
        assert_eq!(d["f"][5], (7 + 2 * ell).to_string());
        assert_eq!(d["star"]["f_1 <= f_2"], false);
    }
}

#[test]
fn scans() {
    let out = stdout(&["scan", "logconv7", "--n", "8..20"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows[0].starts_with("8,28/15,8/5,25/16,"));
    assert_eq!(flagvec(&["scan", "logconv7", "--n", "5..7"]).status.code(), Some(2));
    assert_eq!(flagvec(&["scan", "logconv7", "--n", "eight"]).status.code(), Some(2));

    let out = stdout(&["scan", "convexity5", "--n", "6..12"]);
    let negative: Vec<&str> = out
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(6).unwrap().starts_with('-'))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(negative, ["8", "9", "10", "11", "12"]);
}

#[test]
fn verify_paper_is_deterministic() {
    let a = flagvec(&["verify-paper", "--no-meta", "--format", "json"]);
    let b = flagvec(&["verify-paper", "--no-meta", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["pass"], true);
    assert!(doc.get("meta").is_none());
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"kalai-form-reduction"));
    assert!(names.contains(&"candidate-7d-f6"));
    let kalai = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "kalai-form-reduction").unwrap();
    assert_eq!(kalai["expected"], "-6f_1 + 9f_2 - 6f_3");

    let with_meta = json(&["verify-paper", "--format", "json"]);
    assert!(with_meta.get("meta").is_some());
}
