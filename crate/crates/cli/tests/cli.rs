//! End-to-end runs of the `semh` binary against the committed fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn semh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = semh(args);
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf8 stdout"),
        String::from_utf8(output.stderr).expect("utf8 stderr"),
    )
}

#[test]
fn validate_accepts_the_fixture_corpus() {
    for name in [
        "paper_remark26.sms",
        "module_snake.sms",
        "cone_doubling.sms",
        "naturality_snake.sms",
        "windowed_free.sms",
        "completions.sms",
    ] {
        let (code, stdout, stderr) = run(&["validate", fixture(name).to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {stderr}");
        assert!(stdout.lines().all(|l| l.starts_with("ok ")), "{name}");
    }
}

#[test]
fn validate_rejects_the_broken_semiring_with_a_witness() {
    let (code, _, stderr) = run(&["validate", fixture("bad_semiring.sms").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("identity"));
    assert!(stderr.contains("1"));
}

#[test]
fn homology_of_the_counterexample_quotient_row() {
    let (code, stdout, _) = run(&[
        "homology",
        fixture("paper_remark26.sms").to_str().unwrap(),
        "--degree",
        "1",
    ]);
    assert_eq!(code, 0);
    // H_1 of the quotient row is the two-element idempotent submonoid.
    assert!(stdout.contains("H_1(counterexample-l2.sigma.target): 2 elements [0 e]"));
    assert!(stdout.contains("H_1(counterexample-n3.sigma.target): 2 elements [0 2]"));
}

#[test]
fn longseq_reports_are_deterministic() {
    let path = fixture("paper_remark26.sms");
    let args = ["longseq", path.to_str().unwrap(), "--format", "json"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(
        first, second,
        "identical inputs give byte-identical reports"
    );
    let parsed: serde_json::Value = serde_json::from_str(&first).expect("valid json");
    let sequences = parsed.as_array().expect("array of sequences");
    assert_eq!(sequences.len(), 2);
    // Inexact positions carry replayable witnesses.
    let text = first;
    assert!(text.contains("\"verdict\": \"inexact\""));
    assert!(text.contains("\"witness\": \"e\""));
}

#[test]
fn theorem_checks_on_the_worked_instances() {
    let (code, stdout, _) = run(&[
        "theorem",
        fixture("module_snake.sms").to_str().unwrap(),
        "--which",
        "2.4",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("theorem 2.4 applicable"));
    assert!(stdout.contains("conclusions hold"));

    let (code, stdout, _) = run(&[
        "theorem",
        fixture("paper_remark26.sms").to_str().unwrap(),
        "--which",
        "2.5",
    ]);
    assert_eq!(code, 0, "hypothesis-violating instances are not alarms");
    assert!(stdout.contains("not applicable"));
    assert!(stdout.contains("conclusion fails: exact at H_1(C)"));
}

#[test]
fn cone_and_naturality_round() {
    let (code, stdout, _) = run(&["cone", fixture("cone_doubling.sms").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("completion commutes with the cone: yes"));
    assert!(stdout.contains("corollary condition"));

    let (code, stdout, _) = run(&[
        "naturality",
        fixture("naturality_snake.sms").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("all homology squares commute"));
}

#[test]
fn schreier_flags_are_reported() {
    let (code, stdout, _) = run(&["schreier", fixture("module_snake.sms").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("connecting hypotheses: true"));
}

#[test]
fn windowed_homology_is_reported_as_semi_decided() {
    let file = fixture("windowed_free.sms");
    let (code, stdout, _) = run(&[
        "homology",
        file.to_str().unwrap(),
        "--degree",
        "0",
        "--backend",
        "window",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("undecided within the window"));

    let (code, stdout, _) = run(&[
        "homology",
        file.to_str().unwrap(),
        "--degree",
        "1",
        "--backend",
        "window",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("(conclusive)"));

    let (code, stdout, _) = run(&["complete", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Z^1 (symbolic, window bound 32)"));
}

#[test]
fn search_is_deterministic_and_finds_the_counterexample_family() {
    let args = ["search", "--target", "remark-2.6-family", "--max-size", "3"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    assert!(first.contains("0 alarms"));
    // Five of the eight monoids of size at most three carry a nonzero
    // idempotent; each is an expected finding.
    assert!(first.contains("5 findings"));
}

#[test]
fn search_squares_target_is_clean() {
    let (code, stdout, _) = run(&[
        "search",
        "--target",
        "prop-2.1-square",
        "--max-size",
        "2",
        "--seed",
        "11",
        "--count",
        "20",
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("0 alarms"));
}

#[test]
fn usage_errors_exit_with_code_two() {
    let (code, _, _) = run(&["homology", "/nonexistent.sms", "--degree", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["search", "--target", "bogus"]);
    assert_eq!(code, 2);
}
