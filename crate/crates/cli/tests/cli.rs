//! End-to-end tests against the built binary: argument handling, report
//! shapes, determinism and exit codes.

use std::process::{Command, Output};

fn odograph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odograph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn normal_form_roundtrip() {
    let out = odograph(&["normal-form", "--n", "2,3", "x2:1 x1:0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x1:1 x2:0");
}

#[test]
fn simplicity_json_report() {
    let out = odograph(&["simplicity", "--n", "2,4", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["simple"], serde_json::json!(false));
    assert_eq!(value["p"], serde_json::json!([2, 0]));
    assert_eq!(value["q"], serde_json::json!([0, 1]));

    let simple = odograph(&["simplicity", "--n", "2,3", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&simple)).unwrap();
    assert_eq!(value["simple"], serde_json::json!(true));
}

#[test]
fn reports_are_deterministic() {
    let run = || stdout(&odograph(&["ideal-chain", "--n", "2,4", r#"[["x1:0","x2:0"]]"#, "--json"]));
    let first = run();
    assert_eq!(first, run());
    let value: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(value["ideal"]["degree"], serde_json::json!([0, 1]));
    assert_eq!(value["ideal"]["codes"], serde_json::json!(["0", "2"]));
}

#[test]
fn usage_errors_exit_2() {
    let out = odograph(&["normal-form", "x1:0"]); // no spec
    assert_eq!(out.status.code(), Some(2));
    let out = odograph(&["normal-form", "--n", "2,3", "x9:0"]); // bad letter
    assert_eq!(out.status.code(), Some(2));
    let out = odograph(&["encode", "--n", "0"]); // empty alphabet
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failures_exit_1() {
    // a rank-3 spec with a perturbed table fails the cubic check with exit 1
    let dir = std::env::temp_dir().join("odograph-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("perturbed.json");
    std::fs::write(
        &path,
        r#"{
            "n": [2, 2, 2],
            "theta": {
                "(1,2)": [["0,0", "0,1"], ["1,0", "1,1"]],
                "(1,3)": [["0,1", "0,0"], ["1,0", "1,1"]],
                "(2,3)": [["0,0", "0,1"], ["1,0", "1,1"]]
            }
        }"#,
    )
    .unwrap();
    let out = odograph(&["cubic-check", "--theta-file", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["cubic"], serde_json::json!(false));
}

#[test]
fn theta_file_standard_tables_accepted() {
    let dir = std::env::temp_dir().join("odograph-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("standard22.json");
    // explicit tables that happen to match the division formula, so the
    // integer coding still applies
    std::fs::write(
        &path,
        r#"{"n": [2, 2], "theta": {"(1,2)": [["0,0", "0,1"], ["1,0", "1,1"]]}}"#,
    )
    .unwrap();
    let out = odograph(&["encode", "--theta-file", path.to_str().unwrap(), "x2:1 x1:1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "degree (1,1) code 3");
}

#[test]
fn subcommand_smoke_sweep() {
    let cases: Vec<(&[&str], &str)> = vec![
        (&["multiply", "--n", "2,3", "x1:0", "x2:1"], "x1:0 x2:1"),
        (&["encode", "--n", "2,3", "x1:1 x2:0"], "degree (1,1) code 1"),
        (&["act", "--n", "2,3", "1", "x1:1 x2:2"], "image x1:0 x2:0 restriction 1"),
        (&["restrict", "--n", "2,3", "7", "x2:2"], "3"),
        (&["zs-mul", "--n", "2", "x1:1", "1", "x1:1", "0"], "(x1:1 x1:0, 1)"),
        (&["solve-restriction", "--n", "2,3", "x1:1", "0"], "-1"),
        (&["lcm", "--n", "2,3", "x1:0", "x2:0"], "lcm x1:0 x2:0"),
        (&["path", "--n", "2,3", "1/5", "1,1"], "range 1/5 source 1/5 degree (1,1)"),
        (&["roots", "--n", "2,3", "1/3", "1,0"], "1/6 2/3"),
        (
            &["orbit", "--n", "2,3", "1/3", "--eps", "1/12"],
            "degree (0,1) root 1/3 distance 0",
        ),
    ];
    for (args, expected) in cases {
        let out = odograph(args);
        assert!(out.status.success(), "{args:?}: {:?}", out);
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }

    // verification subcommands exit 0 with all-pass summaries
    for args in [
        vec!["check-axioms", "--n", "2,3", "--g-bound", "4", "--len-bound", "2"],
        vec!["verify-qn", "--n", "2,3"],
        vec![
            "verify-psystem",
            "--n",
            "2,3",
            "--degrees",
            "1,0;0,1",
            "--exp-range",
            "2",
        ],
        vec!["verify-relations", "--n", "2,4", "--l-max", "2", "--n-bound", "2"],
    ] {
        let out = odograph(&args);
        assert!(out.status.success(), "{args:?}");
        assert!(stdout(&out).contains("all"), "{args:?}: {}", stdout(&out));
    }

    // ideal intersection over JSON payloads
    let out = odograph(&[
        "ideal-intersect",
        "--n",
        "2,4",
        r#"{"degree":[1,0],"codes":["0"]}"#,
        r#"{"degree":[0,1],"codes":["0"]}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "degree (1,1) codes {0,4}");
}

#[test]
fn exhaustive_family_report() {
    let out = odograph(&["exhaustive", "--n", "2,4", "x1:0", "x2:1", "x2:3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("exhaustive"));
    let out = odograph(&["exhaustive", "--n", "2,3", "x1:0", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["exhaustive"], serde_json::json!(false));
    assert_eq!(value["witness"], serde_json::json!("1"));
}
