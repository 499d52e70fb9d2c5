// Copyright 2026 qmslab contributors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

fn qmslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmslab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_transference_exits_zero() {
    let out = qmslab(&["verify", "--suite", "transference"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn verify_capacities_csv_has_one_line_per_check() {
    let out = qmslab(&["verify", "--suite", "capacities", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,name,passed,slack,detail"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 5);
    assert!(rows.iter().all(|r| r.starts_with("capacities,")));
}

#[test]
fn exit_codes_for_bad_input_and_limits() {
    assert_eq!(code(&qmslab(&[])), 2);
    assert_eq!(code(&qmslab(&["example"])), 2);
    assert_eq!(code(&qmslab(&["example", "--example", "nope"])), 2);
    assert_eq!(code(&qmslab(&["example", "--example", "wcd", "--t-start", "-1"])), 2);
    assert_eq!(code(&qmslab(&["example", "--example", "wcd", "--eps", "0.1,-2"])), 2);
    assert_eq!(code(&qmslab(&["verify", "--suite", "everything"])), 2);
    assert_eq!(code(&qmslab(&["kernel"])), 2);
    assert_eq!(code(&qmslab(&["--bogus-flag"])), 2);
    assert_eq!(code(&qmslab(&["example", "--example", "wcd", "--n", "6"])), 3);
    assert_eq!(
        code(&qmslab(&["example", "--example", "swap", "--n", "4", "--d", "3"])),
        3
    );
    assert_eq!(
        code(&qmslab(&["example", "--example", "wcd", "--t-points", "1000000"])),
        3
    );
}

#[test]
fn identical_config_and_seed_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = qmslab(&[
            "example",
            "--example",
            "depolarizing",
            "--n",
            "3",
            "--seed",
            "7",
            "--states",
            "6",
            "--t-points",
            "9",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    fs::write(
        &config,
        r#"{"command": "example", "example": "wcd", "n": 2,
            "t_grid": {"start": 0.5, "stop": 2.0, "points": 4},
            "output": {"format": "json"}}"#,
    )
    .unwrap();
    let from_file: serde_json::Value =
        serde_json::from_slice(&qmslab(&["--config", config.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(from_file["example"], "wcd");
    assert_eq!(from_file["params"]["n"], 2);
    assert_eq!(from_file["rows"].as_array().unwrap().len(), 4);

    let out = qmslab(&[
        "--config",
        config.to_str().unwrap(),
        "--n",
        "3",
        "--t-points",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("# n=3"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn bits_flag_rescales_entropic_columns_only() {
    let args = [
        "example",
        "--example",
        "depolarizing",
        "--t-points",
        "3",
        "--t-stop",
        "1",
        "--format",
        "json",
    ];
    let nats: serde_json::Value = serde_json::from_slice(&qmslab(&args).stdout).unwrap();
    let mut with_bits = args.to_vec();
    with_bits.push("--bits");
    let bits: serde_json::Value = serde_json::from_slice(&qmslab(&with_bits).stdout).unwrap();
    let columns: Vec<&str> = nats["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    let q_hi = columns.iter().position(|c| *c == "Q_hi").unwrap();
    let t = columns.iter().position(|c| *c == "t").unwrap();
    let row_nats = &nats["rows"][0];
    let row_bits = &bits["rows"][0];
    assert_eq!(row_nats[t], row_bits[t]);
    let ratio = row_bits[q_hi].as_f64().unwrap() / row_nats[q_hi].as_f64().unwrap();
    assert!((ratio - std::f64::consts::LOG2_E).abs() < 1e-12);
    assert_eq!(bits["unit"], "bits");
}

#[test]
fn kernel_from_group_file() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("z3.json");
    fs::write(
        &group,
        r#"{"label": "Z3", "order": 3, "mul": [[0,1,2],[1,2,0],[2,0,1]], "inv": [0,2,1], "identity": 0}"#,
    )
    .unwrap();
    let g = group.to_str().unwrap();
    let out = qmslab(&["kernel", "--group-file", g, "--rates", "0,0.5,0.5", "--t-points", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("t,norm_p1,norm_p2,norm_inf"));
    // Symmetric walk on Z_3 at unit rate per step has gap 3/2.
    assert!(text.contains("# gap=1.5"), "{text}");

    assert_eq!(code(&qmslab(&["kernel", "--group-file", g])), 2);
    assert_eq!(code(&qmslab(&["kernel", "--group-file", g, "--rates", "0,1"])), 2);
    let broken = dir.path().join("broken.json");
    fs::write(
        &broken,
        r#"{"label": "x", "order": 2, "mul": [[0,1],[1,1]], "inv": [0,1], "identity": 0}"#,
    )
    .unwrap();
    assert_eq!(
        code(&qmslab(&[
            "kernel",
            "--group-file",
            broken.to_str().unwrap(),
            "--rates",
            "1"
        ])),
        2
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&qmslab(&[
            "kernel",
            "--group-file",
            missing.to_str().unwrap(),
            "--rates",
            "1"
        ])),
        2
    );
}

#[test]
fn kernel_named_chain_and_rep() {
    let out = qmslab(&["kernel", "--chain", "transpositions:3", "--t-points", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("tabulated_gap"));
    let out = qmslab(&["kernel", "--rep", "char", "--n", "3", "--t-points", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("trace_distance"));
    let gap: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# quantum_gap="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((gap - 1.0).abs() < 1e-10);
    assert_eq!(code(&qmslab(&["kernel", "--chain", "complete:5", "--rep", "weyl"])), 2);
}
