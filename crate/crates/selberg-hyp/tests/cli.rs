//! End-to-end tests of the `selberg-hyp` binary: exit-code contract, error
//! stream shape, output formats, and file output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selberg-hyp"))
        .args(args)
        .output()
        .expect("spawn CLI")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn usage_error_exits_1() {
    let out = run(&["jk", "--N", "2"]); // missing required flags
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["jk", "--N", "2", "--a", "x/y", "--b", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["jk", "--help"]).status.code(), Some(0));
}

#[test]
fn contract_violation_exits_2_with_single_error_line() {
    let out = run(&["jk", "--N", "2", "--a", "-1", "--b", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: invalid-params:"), "{err}");
    assert!(stdout(&out).is_empty());

    // a singular derivation input is a contract violation, not a crash
    let out = run(&["jk", "--N", "1", "--a", "1", "--b", "3", "--k", "4", "--method", "derivation"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: singular:"));

    let out = run(&["oracle", "--N", "7", "--a", "1", "--b", "1", "--k", "1", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: oracle:"));
}

#[test]
fn jk_all_prints_three_routes_and_agreement() {
    let out = run(&["jk", "--N", "4", "--a", "3/2", "--b", "5/2", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "sum = 93/512\nhyp = 93/512\nderivation = 93/512\nagreement: ok\n"
    );
}

#[test]
fn converge_csv_matches_schema() {
    let out = run(&[
        "converge", "--a1", "1", "--b1", "1", "--k", "1", "--schedule", "2,4,8", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,a,b,jk,limit,abs_error");
    // k=1 with a1=b1=1 is exactly 1/2 at every N
    assert_eq!(lines[1], "2,2,2,1/2,1/2,0");
    assert_eq!(lines.len(), 4);
}

#[test]
fn verify_failure_free_run_exits_0() {
    let out = run(&["verify", "--suite", "t2106", "--trials", "50", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("result: PASS\n"));
}

#[test]
fn output_flag_writes_file_and_stdout_stays_empty() {
    let dir = std::env::temp_dir().join("selberg-hyp-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("limit.json");
    let out = run(&[
        "limit", "--a1", "1/2", "--b1", "2", "--k", "3", "--format", "json", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(value["results"][0]["value"], "197/2187");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn mc_oracle_reports_estimate_against_reference() {
    let out = run(&[
        "oracle", "--N", "1", "--a", "2", "--b", "3", "--k", "2", "--mc", "--samples", "20000",
        "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("jk_sum = 1/5"), "{text}");
    assert!(text.ends_with("ok\n"), "{text}");
}
