//! End-to-end CLI checks: exit codes, document shapes, byte stability.

use std::process::{Command, Output};

fn modiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modiso"))
        .args(args)
        .env("MIP_MAX_ORDER", "4096")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn verify_counterexample_exits_zero_with_evidence() {
    let out = modiso(&["verify-counterexample", "--n", "4", "--m", "3", "--l", "2", "--field-deg", "1"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["rank"], 512);
    assert_eq!(v["relations_all_pass"], true);
    assert_eq!(v["groups_nonisomorphic"], true);
    assert_eq!(v["centralizer_exponents"], serde_json::json!([16, 8]));
    assert_eq!(v["verified"], true);
}

#[test]
fn kernel_table_markdown_cell() {
    let out = modiso(&["kernel-table", "--n", "4", "--m", "3", "--l", "2", "--field-deg", "2", "--format", "md"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("| D2 | 4 |"), "{text}");
}

#[test]
fn brute_iso_q16() {
    let out = modiso(&["brute-iso", "--a", "6,1,1,2", "--b", "q16"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["isomorphic"], true);
    let out = modiso(&["brute-iso", "--a", "1,1,1,2", "--b", "q16"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn usage_errors_exit_two() {
    // Unknown flag.
    let out = modiso(&["group", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    // Invalid parameters: D2 at n = m.
    let out = modiso(&["group", "--family", "D2", "--n", "2", "--m", "2", "--l", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // Exceeding the order guard.
    let out = Command::new(env!("CARGO_BIN_EXE_modiso"))
        .args(["group", "--family", "D1", "--n", "5", "--m", "5", "--l", "5"])
        .env("MIP_MAX_ORDER", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn documents_are_byte_stable() {
    for args in [
        vec!["invariants", "--family", "D1", "--n", "3", "--m", "2", "--l", "2"],
        vec!["quotients", "--n", "3", "--m", "1", "--l", "2", "--format", "csv"],
        vec!["quotient-graph", "--max-order", "64"],
        vec!["group", "--family", "D5", "--n", "2", "--m", "2", "--l", "2", "--format", "md"],
    ] {
        let a = stdout_of(&modiso(&args));
        let b = stdout_of(&modiso(&args));
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn quotient_graph_contains_degenerate_edge() {
    let out = modiso(&["quotient-graph", "--max-order", "128"]);
    assert!(out.status.success());
    let dot = stdout_of(&out);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"D6(2,1,2)\" -> \"D2(2,1,1)\";"), "{dot}");
}

#[test]
fn classify_pair_reports_kind() {
    let out = modiso(&["classify-pair", "--a", "D2", "--b", "D4", "--n", "3", "--m", "1", "--l", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["outcome"]["kind"], "Distinguished");
    assert_eq!(v["outcome"]["invariant"], "kuelshammer_square_classes");
}

#[test]
fn invariants_md_projection() {
    let out = modiso(&["invariants", "--family", "D1", "--n", "4", "--m", "3", "--l", "2", "--format", "md"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("| center | 8 4 2 |"), "{text}");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("modiso-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = modiso(&[
        "kernel-table", "--n", "4", "--m", "3", "--l", "2", "--format", "csv",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("group,"));
    std::fs::remove_dir_all(&dir).ok();
}
