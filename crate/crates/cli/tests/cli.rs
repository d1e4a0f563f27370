//! End-to-end behaviour of the `displace` binary: exit codes, parse
//! errors, listing, determinism and conformance to the shipped schemas.

use std::path::PathBuf;
use std::process::{Command, Output};

use displace_cli::runner::{run_scenario, Settings};
use displace_cli::suites;
use jsonschema::JSONSchema;
use serde_json::Value;

fn displace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_displace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, value: &Value, what: &str) {
    if let Err(errors) = schema.validate(value) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what} violates the schema:\n{}", msgs.join("\n"));
    }
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn list_is_nonempty_stable_and_names_core_suites() {
    let a = displace(&["list"]);
    let b = displace(&["list"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    for name in ["gl-block", "pl-tower", "bass-serre"] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name}");
    }
    let names: Vec<_> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, suites::names());
}

#[test]
fn malformed_scenario_reports_line_and_column() {
    let path = scratch("malformed.json", "{\n  \"suite\": \"bad\",\n  \"checks\": [\n    {\"id\": 1,}\n  ]\n}\n");
    let out = displace(&["run", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(displace(&["run"]).status.code(), Some(2));
    assert_eq!(displace(&["run", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        displace(&["run", "--suite", "torsion", "--scenario", "x.json"]).status.code(),
        Some(2)
    );
    assert_eq!(displace(&["run", "--suite", "torsion", "--jobs", "0"]).status.code(), Some(2));
    let bad_element = scratch(
        "bad-element.json",
        r#"{"suite": "x", "checks": [{"id": "a", "group": {"kind": "sym", "degree": 3},
            "op": {"kind": "cc", "subject": ["(1 7)"], "t": "()"}, "expect": "pass"}]}"#,
    );
    let out = displace(&["run", "--scenario", bad_element.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn violated_expectation_exits_1_and_budget_exits_3() {
    let wrong = scratch(
        "wrong.json",
        r#"{"suite": "x", "checks": [{"id": "a", "group": {"kind": "sym", "degree": 4},
            "op": {"kind": "cc", "subject": ["(1 2)"], "t": "(1 3)(2 4)"}, "expect": "fail"}]}"#,
    );
    let out = displace(&["run", "--scenario", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["met"], false);
    assert_eq!(report["checks"][0]["verdict"], "pass");
    let out = displace(&["run", "--suite", "torsion", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let mut outputs = Vec::new();
    for jobs in ["1", "3", "1"] {
        let path = dir.join(format!("pl-{jobs}-{}.json", outputs.len()));
        let out = displace(&[
            "run", "--suite", "pl-tower", "--seed", "11", "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn seeds_only_affect_sampled_checks() {
    let spec = suites::load("all").unwrap().unwrap();
    let run = |seed| {
        let settings = Settings {
            seed,
            ..Settings::default()
        };
        run_scenario(&spec, &settings).unwrap()
    };
    let (a, b) = (run(0), run(99));
    let sampled = ["block-conjugation", "pl-tower", "fixed-point", "britton"];
    for (x, y) in a.checks.iter().zip(&b.checks) {
        assert_eq!(x.verdict, y.verdict, "{}", x.id);
        if !sampled.contains(&x.op.as_str()) {
            assert_eq!(
                serde_json::to_string(&x.report).unwrap(),
                serde_json::to_string(&y.report).unwrap(),
                "{}",
                x.id
            );
        }
    }
}

#[test]
fn p_max_override_reaches_bounded_checks() {
    let out = displace(&["run", "--suite", "pl-tower", "--p-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["settings"]["p_max"], 3);
    let czc = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "gamma-1-czc")
        .unwrap();
    assert_eq!(czc["report"]["bounds"]["p_max"], 3);
}

#[test]
fn text_format_has_one_line_per_check() {
    let out = displace(&["run", "--suite", "hall-analogue", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let spec = suites::load("hall-analogue").unwrap().unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("ok")).count(), spec.checks.len());
}

#[test]
fn suites_and_reports_conform_to_the_schemas() {
    let scenario = schema("scenario.schema.json");
    for s in suites::SUITES {
        let value: Value = serde_json::from_str(s.source).unwrap();
        assert_valid(&scenario, &value, s.name);
    }
    let extra: Value = serde_json::json!({"suite": "x", "checks": [], "bogus": 1});
    assert!(!scenario.is_valid(&extra));

    let report = schema("report.schema.json");
    let out = displace(&["run", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&report, &value, "report of all");
}

#[test]
fn rationals_serialize_as_fraction_strings() {
    let out = displace(&["run", "--suite", "fixed-point"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let h = &report["checks"][0]["report"]["witness"][0][1];
    let first = &h[1][0];
    assert!(first.as_str().unwrap().contains('/'), "{h}");
}
