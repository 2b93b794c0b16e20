use std::process::Command;

use monogenic::poly::parse_poly;
use monogenic::spaces::is_monogenic;
use monogenic::Setting;
use monogenic_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("monogenic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let r = invoke(args);
    let value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", r.stdout));
    (r.code, value)
}

fn schema_validator() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(value: &Value) {
    let validator = schema_validator();
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

fn column(value: &Value, key: &str) -> Vec<String> {
    value["rows"].as_array().unwrap().iter().map(|r| r[key].as_str().unwrap().to_string()).collect()
}

#[test]
fn table_quaternion() {
    let (code, v) = invoke_json(&["table", "--setting", "quaternion", "--m-max", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(column(&v, "m_closed"), ["3/4", "2/3", "5/8"]);
    assert_eq!(column(&v, "alpha0"), ["2/3", "1/2", "2/5"]);
    assert_eq!(column(&v, "m_certified"), ["3/4", "2/3", "5/8"]);
    assert_eq!(column(&v, "status"), ["Certified"; 3]);
}

#[test]
fn table_clifford_three() {
    let (code, v) = invoke_json(&["table", "--setting", "clifford", "--n", "3", "--m-max", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(column(&v, "m_closed"), ["2/3", "3/5"]);
    assert_eq!(column(&v, "alpha0"), ["1/2", "1/3"]);
}

#[test]
fn table_octonion_first_row() {
    let (code, v) = invoke_json(&["table", "--setting", "octonion", "--m-max", "0", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(column(&v, "alpha0"), ["6/7"]);
    assert_eq!(column(&v, "m_certified"), ["7/8"]);
}

#[test]
fn table_csv_and_text_mirror_the_rationals() {
    let csv = invoke(&["table", "--m-max", "1", "--format", "csv"]);
    assert_eq!(csv.code, EXIT_OK);
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("quaternion,4,0,3/4,2/3,3/4,Certified,"));
    assert!(lines[2].starts_with("quaternion,4,1,2/3,1/2,2/3,Certified,"));
    let text = invoke(&["table", "--m-max", "1"]);
    assert_eq!(text.code, EXIT_OK);
    assert_eq!(text.stdout.matches("Certified").count(), 2);
}

#[test]
fn certify_quaternion_m1() {
    let (code, v) = invoke_json(&["certify", "--setting", "quaternion", "--m", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(v["m_closed"], "2/3");
    assert_eq!(v["m_certified"], "2/3");
    assert_eq!(v["certificate"]["status"], "Certified");
    assert_eq!(v["lambda_star"], "32/3");
    assert_eq!(v["random_direction_checks"]["passed"], v["random_direction_checks"]["total"]);
}

#[test]
fn extend_reparses_to_monogenic() {
    let (code, v) = invoke_json(&["extend", "--setting", "quaternion", "--input", "x1"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(v["monogenic"], true);
    let setting = Setting::Quaternion;
    let f = parse_poly(v["extension"].as_str().unwrap(), setting.kind(), setting.nvars()).unwrap();
    assert!(is_monogenic(&f, &setting.ambient_operator()).unwrap());
}

#[test]
fn extend_reads_input_file() {
    let path = std::env::temp_dir().join(format!("monogenic-cli-input-{}.txt", std::process::id()));
    std::fs::write(&path, "x1^2*x2 + e[1]*x0").unwrap();
    let arg = format!("@{}", path.display());
    let (code, v) = invoke_json(&["extend", "--setting", "clifford", "--n", "4", "--input", &arg]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(v["monogenic"], true);
}

#[test]
fn decompose_pieces_are_listed() {
    let (code, v) = invoke_json(&["decompose", "--setting", "octonion", "--input", "x1^2 + x2*x3"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    let pieces = v["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 3);
    for (j, p) in pieces.iter().enumerate() {
        assert_eq!(p["j"], j);
        assert_eq!(p["degree"], 2 - j);
    }
}

#[test]
fn check_witness_violates_below_threshold() {
    let (code, v) = invoke_json(&["check", "--setting", "quaternion", "--m", "1", "--alpha", "2/5", "--witness"]);
    assert_eq!(code, EXIT_FAILED);
    assert_valid(&v);
    assert_eq!(v["verdict"], "ViolationAt");
    assert_eq!(v["violation_point"], serde_json::json!(["0", "0", "0", "0"]));
    assert_eq!(v["samples"][0]["sign"], "negative");
}

#[test]
fn check_random_function_at_sharp_exponent() {
    let (code, v) = invoke_json(&["check", "--setting", "clifford", "--n", "3", "--m", "1", "--samples", "40"]);
    assert_eq!(code, EXIT_OK);
    assert_valid(&v);
    assert_eq!(v["alpha"], "1/3");
    assert_eq!(v["verdict"], "AllNonnegative");
    assert_eq!(v["evaluated"].as_u64().unwrap() + v["skipped"].as_u64().unwrap(), 40);
}

#[test]
fn check_witness_at_sharp_exponent_keeps_origin_nonnegative() {
    let (code, v) = invoke_json(&["check", "--m", "1", "--witness", "--samples", "20"]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["samples"][0]["rayleigh"], "2/3");
    assert_eq!(v["samples"][0]["sign"], "zero");
}

#[test]
fn check_rejects_non_monogenic_input() {
    let r = invoke(&["check", "--input", "x1*x2"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(!r.stderr.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["table", "--setting", "clifford"][..],
        &["table", "--setting", "quaternion", "--n", "3"],
        &["table", "--setting", "clifford", "--n", "2"],
        &["certify", "--m", "x"],
        &["check", "--alpha", "3"],
        &["check", "--alpha", "0"],
        &["check", "--alpha", "1/0"],
        &["check", "--witness", "--input", "x1"],
        &["decompose", "--input", "x0*x1"],
        &["decompose", "--input", "x1 + x2^2"],
        &["extend", "--input", "x1 +"],
        &["extend", "--input", "@/nonexistent/path"],
        &["frobnicate"],
    ] {
        let r = invoke(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let r = invoke(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("table"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--m-max", "2", "--seed", "7"][..],
        &["certify", "--setting", "clifford", "--n", "4", "--m", "1", "--seed", "3"],
        &["check", "--setting", "octonion", "--m", "0", "--samples", "15", "--seed", "11"],
    ] {
        assert_eq!(invoke(args).stdout, invoke(args).stdout, "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_monogenic");
    let ok = Command::new(bin).args(["table", "--m-max", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let failed = Command::new(bin).args(["check", "--m", "1", "--alpha", "2/5", "--witness"]).output().unwrap();
    assert_eq!(failed.status.code(), Some(EXIT_FAILED));
    let usage = Command::new(bin).args(["table", "--setting", "clifford"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(!usage.stderr.is_empty());
}
