//! End-to-end tests of the command-line tool: exit codes, report shapes and
//! determinism across worker counts.

use std::process::{Command, Output};

use serde_json::Value;

fn rbalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_rb_passes_on_fibonacci() {
    let out = rbalg(&[
        "verify-rb",
        "--family",
        r#"{"family":"Fibonacci","a":"0","b":"1"}"#,
        "--weight",
        "1",
        "-N",
        "12",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], Value::Bool(true));
    assert!(report["checked_pairs"].as_u64().unwrap() > 0);
}

#[test]
fn verify_rb_rejects_excluded_parameters() {
    // 2*q1 = q0 + q2
    let out = rbalg(&[
        "verify-rb",
        "--family",
        r#"{"family":"R1General","q0":"0","q1":"1","q2":"2"}"#,
    ]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2*q1 = q0 + q2"), "stderr: {err}");
}

#[test]
fn verify_rb_reports_violations_on_perturbed_table() {
    // identity-like table with one wrong entry
    let family = r#"{"family":"Custom","weight":"1","table":[
        {"n":0,"m":0,"coeff":"-1","image":{"n":0,"m":0}},
        {"n":1,"m":0,"coeff":"-2","image":{"n":1,"m":0}},
        {"n":0,"m":1,"coeff":"-1","image":{"n":0,"m":1}},
        {"n":2,"m":0,"coeff":"-1","image":{"n":2,"m":0}},
        {"n":1,"m":1,"coeff":"-1","image":{"n":1,"m":1}},
        {"n":0,"m":2,"coeff":"-1","image":{"n":0,"m":2}}
    ]}"#;
    let out = rbalg(&["verify-rb", "--family", family, "-N", "2"]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    assert_eq!(report["passed"], Value::Bool(false));
    let first = &report["violations"][0];
    assert!(first["a"].is_object() && first["b"].is_object());
}

#[test]
fn verify_rb_is_deterministic_across_workers() {
    let args = |workers: &'static str| {
        [
            "verify-rb",
            "--family",
            r#"{"family":"R1Q0EqQ2","q0":"1","q1":"2"}"#,
            "-N",
            "10",
            "--workers",
            workers,
        ]
    };
    let a = rbalg(&args("1"));
    let b = rbalg(&args("3"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_averaging_full_pipeline() {
    let out = rbalg(&[
        "verify-averaging",
        "--spec",
        r#"{"case":"Case2","r":1,"alpha":"3"}"#,
        "-N",
        "8",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["averaging"]["passed"], Value::Bool(true));
    assert_eq!(report["negation_rb"]["passed"], Value::Bool(true));
    assert_eq!(report["negation_splitting_criterion"]["passed"], Value::Bool(true));
}

#[test]
fn classify_counts_idempotents() {
    let out = rbalg(&["classify", "--bound", "1"]);
    assert_eq!(code(&out), 0);
    let listing = stdout_json(&out);
    assert_eq!(listing["count"].as_u64(), Some(8));
    for entry in listing["entries"].as_array().unwrap() {
        assert!(entry["spec"].is_object(), "unclassified entry {entry}");
    }
    let out = rbalg(&["classify", "--bound", "0"]);
    let listing = stdout_json(&out);
    assert_eq!(listing["count"].as_u64(), Some(1));
}

#[test]
fn table_cross_check_agrees() {
    for family in [
        r#"{"family":"Fibonacci","a":"0","b":"1"}"#,
        r#"{"family":"R1Q0EqQ2","q0":"1","q1":"2"}"#,
        r#"{"family":"R1Q1EqQ2","q0":"3","q1":"1"}"#,
    ] {
        let out = rbalg(&[
            "table", "--family", family, "-K", "3", "-M", "6", "--cross-check",
        ]);
        assert_eq!(code(&out), 0, "{family}: {}", String::from_utf8_lossy(&out.stderr));
        let table = stdout_json(&out);
        let rows = table["table"].as_array().unwrap();
        assert!(!rows.is_empty());
        // rows sorted by (n, m)
        let keys: Vec<(i64, i64)> = rows
            .iter()
            .map(|r| (r["n"].as_i64().unwrap(), r["m"].as_i64().unwrap()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}

#[test]
fn table_known_entry() {
    let out = rbalg(&[
        "table",
        "--family",
        r#"{"family":"R1General","q0":"0","q1":"-1/2","q2":"-2/3"}"#,
        "-K",
        "1",
        "-M",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let table = stdout_json(&out);
    let row = table["table"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["n"] == 1 && r["m"] == 3)
        .expect("row (1,3)");
    assert_eq!(row["coeff"], Value::String("-3/4".into()));
    assert_eq!(row["image"]["m"].as_i64(), Some(4));
}

#[test]
fn decomp_pipeline_and_counterexample() {
    let out = rbalg(&[
        "decomp",
        "--spec",
        r#"{"case":"IV","slope":"1"}"#,
        "-N",
        "15",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], Value::Bool(true));
    assert!(report["slopes"]["alphaHat"].is_string());

    let out = rbalg(&[
        "decomp",
        "--spec",
        r#"{"case":"HalfPlane","shift":2}"#,
        "-N",
        "6",
    ]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    let witnesses = report["closure"]["violations"].as_array().unwrap();
    assert!(witnesses
        .iter()
        .any(|v| v["a"]["n"] == 1 && v["a"]["m"] == 2 && v["b"]["n"] == 1 && v["b"]["m"] == 2));
}

#[test]
fn decomp_irrational_slope() {
    let out = rbalg(&[
        "decomp",
        "--spec",
        r#"{"case":"VI","slope":{"a":"0","b":"1","D":"2"}}"#,
        "-N",
        "20",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn s_seq_exit_codes() {
    let out = rbalg(&["s-seq", "--s2", "-1/2", "-M", "10"]);
    assert_eq!(code(&out), 0);
    let dump = stdout_json(&out);
    let rows = dump["values"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[4]["recurrence"], Value::String("-2/5".into()));
    assert_eq!(rows[4]["closed_form"], Value::String("-2/5".into()));

    for bad in ["-1/3", "0", "1", "-1"] {
        let out = rbalg(&["s-seq", "--s2", bad, "-M", "5"]);
        assert_eq!(code(&out), 2, "s2 = {bad}");
    }
}

#[test]
fn vieillard_baron_family_name() {
    let out = rbalg(&[
        "verify-rb",
        "--family",
        r#"{"family":"VieillardBaron"}"#,
        "-N",
        "12",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["law"], Value::String("Rota-Baxter, weight -1".into()));
}
