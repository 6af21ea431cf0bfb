// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn pveto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pveto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn run_prints_winner_and_trace() {
    let out = pveto(&["run", &data("four_voters.ballots"), "--order", "0,1,2,3", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("winner: 0\n"));
    assert_eq!(
        text.lines().filter(|l| !l.starts_with('#') && l.contains('{')).count(),
        4
    );
    assert!(text.contains("1, 0, {0 1 3}, 3, 3"));
}

#[test]
fn all_orders() {
    let out = pveto(&["run", &data("four_voters.ballots"), "--all-orders"]);
    assert_eq!(stdout(&out), "potential winners: {0 1 3}\n");
}

#[test]
fn flow_verifies_the_reference_certificate() {
    let out = pveto(&[
        "flow",
        &data("four_voters.ballots"),
        "--k",
        "1",
        "--cstar",
        "3",
        "--verify",
        &data("four_voters.flow"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "weights: 2/3 1/3 0 0\nvoter 0: 4/3\nvoter 1: 3\nvoter 2: 8/3\nvoter 3: 1\ncost: 3\n"
    );
}

#[test]
fn single_voter_distortion_is_one() {
    let out = pveto(&["distortion", &data("single.ballots"), "--winner", "0", "--cstar", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("distortion: 1.000000000\n"));
}

#[test]
fn point_mass_off_every_path_is_unbounded() {
    let out = pveto(&[
        "distortion",
        &data("single.ballots"),
        "--weights",
        "0 1 0",
        "--cstar",
        "0",
    ]);
    assert_eq!(stdout(&out), "distortion: inf\n");
}

#[test]
fn distortion_writes_witness_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.csv");
    let out = pveto(&[
        "distortion",
        &data("four_voters.ballots"),
        "--winner",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().all(|l| l.split(',').count() == 4));
}

#[test]
fn randomize_prints_fractions() {
    let out = pveto(&["randomize", &data("four_voters.ballots"), "--k", "1"]);
    assert_eq!(stdout(&out), "2/3 1/3 0 0\n");
    let out = pveto(&["randomize", &data("four_voters.ballots"), "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certify_fresh_outputs_passes() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("run.trace");
    let flow = dir.path().join("run.flow");
    let ballots = data("four_voters.ballots");
    for order in ["0,1,2,3", "3,1,2,0", "2,3,0,1"] {
        assert!(
            pveto(&["run", &ballots, "--order", order, "--out", trace.to_str().unwrap()])
                .status
                .success()
        );
        assert!(pveto(&[
            "flow",
            &ballots,
            "--order",
            order,
            "--k",
            "2",
            "--cstar",
            "1",
            "--out",
            flow.to_str().unwrap()
        ])
        .status
        .success());
        let weights = stdout(&pveto(&["randomize", &ballots, "--order", order, "--k", "2"]));
        let out = pveto(&[
            "certify",
            &ballots,
            "--trace",
            trace.to_str().unwrap(),
            "--flow",
            flow.to_str().unwrap(),
            "--weights",
            weights.trim(),
            "--cstar",
            "1",
        ]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{text}");
        assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
    }
}

#[test]
fn certify_reports_failures() {
    let out = pveto(&[
        "certify",
        &data("four_voters.ballots"),
        "--flow",
        &data("four_voters.flow"),
        "--weights",
        "2/3 1/3 0 0",
        "--cstar",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL flow is valid: flow is not conserved at (0, 3)"));
}

#[test]
fn certify_fractional_matching() {
    let out = pveto(&[
        "certify",
        &data("four_voters.ballots"),
        "--p",
        "1/2 1/6 1/6 1/6",
        "--q",
        "1/4 1/4 1/4 1/4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS fractional matching of"));
}

#[test]
fn committee() {
    let out = pveto(&["committee", &data("four_voters.ballots"), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("committee: {"));
    let out = pveto(&["committee", &data("four_voters.ballots"), "--k", "2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seeded_orders_are_reproducible() {
    let a = pveto(&["run", &data("four_voters.ballots"), "--seed", "9", "--trace"]);
    let b = pveto(&["run", &data("four_voters.ballots"), "--seed", "9", "--trace"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.conf");
    std::fs::write(
        &config,
        "rules = plurality_veto, random_dictatorship\ninstances = 20\nvoters = 7\ncandidates = 4\n",
    )
    .unwrap();
    let csv = dir.path().join("out.csv");
    let args = [
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--seed",
        "5",
        "--out",
        csv.to_str().unwrap(),
    ];
    let out = pveto(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("rule instances mean_ratio max_ratio\n"));
    let first = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(first.lines().count(), 41);
    assert!(first.starts_with("seed,rule,winner,cost,opt_cost,ratio\n5,plurality_veto,"));
    pveto(&args);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), first);
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(pveto(&["run", "/nonexistent.ballots"]).status.code(), Some(1));
    assert_eq!(
        pveto(&["run", &data("four_voters.ballots"), "--order", "0,0,1,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        pveto(&["distortion", &data("four_voters.ballots"), "--winner", "7"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(pveto(&["frobnicate"]).status.code(), Some(1));
    let err = String::from_utf8(pveto(&["run", "/nonexistent.ballots"]).stderr).unwrap();
    assert!(err.contains("/nonexistent.ballots"));
}
