use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn instanton(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_instanton")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn classify_charge_one_and_three() {
    let out = instanton(&["classify", "--charge", "1", "--format", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    assert_eq!(v["component_lower_bound"], 1);
    assert_eq!(v["entries"][0]["solver"]["cases"][0][0]["d"], 1);

    let v = json_of(&instanton(&["classify", "--charge", "3", "--format", "json"]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    assert_eq!(v["refined_component_count"], 7);
}

#[test]
fn classify_charge_five_labels() {
    let v = json_of(&instanton(&["classify", "--charge", "5", "--format", "json"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    let statuses: Vec<&str> = entries.iter().map(|e| e["solver"]["status"].as_str().unwrap()).collect();
    assert_eq!(statuses.iter().filter(|s| **s == "classified").count(), 2);
    for e in entries.iter().filter(|e| e["solver"]["status"] == "classified") {
        assert_eq!(e["solver"]["completeness"], "candidate");
    }
}

#[test]
fn classify_is_byte_identical() {
    let a = instanton(&["classify", "--charge", "8", "--format", "json", "--threads", "1"]);
    let b = instanton(&["classify", "--charge", "8", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_out_of_range_is_usage_error() {
    assert_eq!(instanton(&["classify", "--charge", "0"]).status.code(), Some(2));
    assert_eq!(instanton(&["classify", "--charge", "31"]).status.code(), Some(2));
    assert_eq!(instanton(&["hilbert", "--partition", "2,3"]).status.code(), Some(2));
    assert_eq!(instanton(&["bogus"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("instanton-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = instanton(&["classify", "--charge", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["charge"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn hilbert_and_resolution() {
    let out = instanton(&["hilbert", "--partition", "3,3,2", "--m-range", "-1:12", "--format", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["agree_from_max_weight"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 14);

    let text = String::from_utf8(instanton(&["resolution", "--partition", "2"]).stdout).unwrap();
    assert!(text.contains("0 -> O(-3) -> O(-1) + O(-2) -> I -> 0"), "{text}");
    let v = json_of(&instanton(&["resolution", "--partition", "3,2,2,1", "--format", "json"]));
    assert_eq!(v["inner_weights"], serde_json::json!([3, 3, 4, 4]));
    assert_eq!(v["outer_weights"], serde_json::json!([4, 5, 5]));
}

#[test]
fn partitions_and_cases() {
    let v = json_of(&instanton(&["partitions", "--charge", "10", "--format", "json"]));
    assert_eq!(v["enumeration"], "42");
    assert_eq!(v["euler_product"], "42");
    let v = json_of(&instanton(&["partitions", "--charge", "3", "--table", "--format", "json"]));
    assert_eq!(v["partitions"].as_array().unwrap().len(), 3);

    let out = instanton(&["cases", "--partition", "2,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3 case(s)"));
    assert!(text.contains("RestrictionSequenceC2"));
    let v = json_of(&instanton(&["cases", "--partition", "2,1", "--format", "json"]));
    let feasible: Vec<i64> = v["case_table"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["feasible"] == true)
        .map(|r| r["z_tilde"].as_i64().unwrap())
        .collect();
    assert_eq!(feasible, [1, 2, 3]);
    let v = json_of(&instanton(&["cases", "--partition", "2,2", "--format", "json"]));
    assert_eq!(v["status"], "not_classified");
}

#[test]
fn adhm_check_documents() {
    let out = instanton(&["adhm-check", "--input", &data("zero_c2.json"), "--fixed", "--format", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["equations"]["violations"], serde_json::json!([]));
    assert_eq!(v["monad_complex"], true);
    assert_eq!(v["fixed"]["candidate"]["failures"], serde_json::json!([]));

    let out = instanton(&["adhm-check", "--input", &data("violating_c1.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["equations"]["violations"], serde_json::json!([1]));
    assert_eq!(v["monad_complex"], false);

    let out = instanton(&["adhm-check", "--input", &data("nilpotent_c2.json"), "--fixed"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("candidate ok"), "{text}");
    assert!(text.contains("stable (closure dim 2)"), "{text}");
}

#[test]
fn adhm_check_input_errors() {
    let out = instanton(&["adhm-check", "--input", &data("float_entry.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("B1[0][0]"), "{err}");

    let out = instanton(&["adhm-check", "--input", &data("wrong_shape.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("I0"));

    let out = instanton(&["adhm-check", "--input", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn poincare_and_pairing() {
    let v = json_of(&instanton(&["poincare", "--charge", "1", "--format", "json"]));
    let coeffs: Vec<i64> = v["coefficients"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    let expected: Vec<i64> = (0..=13).map(|i| i64::from(i != 1 && i != 12)).collect();
    assert_eq!(coeffs, expected);
    assert_eq!(v["euler_characteristic"], 0);
    let v = json_of(&instanton(&["poincare", "--charge", "2", "--format", "json"]));
    assert!(v["coefficients"].is_null());

    let v = json_of(&instanton(&["pairing", "--demo", "--format", "json"]));
    assert_eq!(v["chi_ideal_q"], 2);
    assert_eq!(v["chi_o_o"], 1);
    assert_eq!(instanton(&["pairing"]).status.code(), Some(2));
}

#[test]
fn selftest_reports_every_criterion() {
    let out = instanton(&["selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), 15, "{text}");
    // the charge-1 self-pairing is 0 by Riemann-Roch, so criterion 14 cannot pass
    let failed: Vec<&str> = lines.iter().filter(|l| l.starts_with("FAIL")).copied().collect();
    assert_eq!(failed.len(), 1, "{text}");
    assert!(failed[0].starts_with("FAIL [14]"), "{text}");
    assert_eq!(out.status.code(), Some(1));
}
