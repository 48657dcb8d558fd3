use std::path::Path;

use serde_json::Value;
use twolift::cli::run_with;
use twolift::graph::{io, make_complete, random_regular, Graph};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twolift").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    assert!(!out.is_empty(), "no report for {args:?}: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn railway_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "r.sg");
    let (code, _) = json(&["example", "railway", "--k", "8", "--out", &file]);
    assert_eq!(code, 0);
    let (code, report) = json(&["analyze", &file]);
    assert_eq!(code, 0);
    assert!((num(&report["signed"]["radius"]) - 5f64.sqrt()).abs() < 1e-9);
    assert_eq!(report["graph"]["regular_degree"], 3);
    assert_eq!(report["schema"], 1);
}

#[test]
fn build_smoke_run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "g.edges");
    let args = ["build", "--d", "3", "--target-n", "256", "--strategy", "random", "--seed", "7", "--out", &file];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let report: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(report["levels"].as_array().unwrap().len(), 6);
    assert!(num(&report["final"]["lambda"]) < 3.0);
    let g = io::load(&file).unwrap().graph;
    assert_eq!((g.n(), g.regular_degree()), (256, Some(3)));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let star = path(dir.path(), "star.edges");
    io::save(&star, &Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap(), None).unwrap();
    let (code, _, err) = run(&["analyze", &star, "--jumbled"]);
    assert_eq!(code, 2);
    assert!(err.contains("regular"), "{err}");
    assert_eq!(run(&["analyze", &star, "--frobnicate"]).0, 2);
    assert_eq!(run(&["analyze", &path(dir.path(), "missing.edges")]).0, 2);
    assert_eq!(run(&["build", "--d", "3", "--target-n", "12"]).0, 2);
    assert_eq!(run(&["build", "--d", "3", "--target-n", "8", "--strategy", "greedy"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn sign_lift_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let base = path(dir.path(), "petersen.edges");
    io::save(&base, &twolift::graph::petersen(), None).unwrap();
    let signed = path(dir.path(), "petersen.sg");
    for strategy in ["exhaustive", "random", "derandomized", "local-refine"] {
        let (code, report) = json(&["sign", &base, "--strategy", strategy, "--budget", "300", "--out", &signed]);
        assert_eq!(code, i32::from(report["met_target"] == false), "{strategy}");
        assert!(num(&report["radius"]) <= 2.0 * 2f64.sqrt() + 1e-9 || code == 1);
    }
    let lifted = path(dir.path(), "lift.edges");
    let (code, report) = json(&["lift", &signed, "--out", &lifted]);
    assert_eq!(code, 0);
    assert_eq!(report["spectrum_ok"], true);
    assert_eq!(io::load(&lifted).unwrap().graph.n(), 20);
    let (code, report) = json(&["verify", &signed]);
    assert_eq!(code, i32::from(report["goodness"]["is_good"] == false));
    assert_eq!(run(&["lift", &base]).0, 2);
}

#[test]
fn witness_on_centered_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "g.edges");
    io::save(&file, &random_regular(12, 3, 4).unwrap(), None).unwrap();
    let (code, report) = json(&["witness", &file, "--centered"]);
    assert_eq!(code, 0);
    assert!(num(&report["witness"]["ratio"]) >= num(&report["alpha_star"]) - 1e-12);
    let u = report["witness"]["u"].as_array().unwrap();
    let v = report["witness"]["v"].as_array().unwrap();
    assert!(!u.is_empty() && !v.is_empty());
    assert!(u.iter().all(|x| !v.contains(x)));
}

#[test]
fn examples_outer_tight_cliques() {
    let (code, report) = json(&["example", "outer", "--n", "64"]);
    assert_eq!(code, 0);
    let h: f64 = (1..=64).map(|i| 1.0 / i as f64).sum();
    assert!((num(&report["top_eigenvalue"]) - h).abs() < 1e-8);
    assert!(num(&report["sampled_ratio"]) <= 4.0);

    let (code, report) = json(&["example", "tight", "--t", "1", "--delta", "4", "--n-base", "16"]);
    assert_eq!(code, 0);
    assert_eq!(report["family"]["degrees"], serde_json::json!([[8, 8], [2, 20]]));

    let (code, report) = json(&["example", "cliques", "--copies", "32", "--d", "3", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(num(&report["radius"]) > num(&report["target_radius"]));
    assert!(num(&report["best_single_copy"]) <= num(&report["target_radius"]) + 1e-9);
}

#[test]
fn oracle_answers_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    io::save(dir.path().join("k4.edges"), &make_complete(4).unwrap(), None).unwrap();
    std::fs::write(dir.path().join("chain.txt"), "base k4.edges\nlevel 4 3 9\nlevel 6 17 40\n").unwrap();
    let chain = path(dir.path(), "chain.txt");
    let (code, report) = json(&["oracle", &chain, "0,1", "0,0", "3,12", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(report["order"], 16);
    let answers = report["answers"].as_array().unwrap();
    assert_eq!(answers.len(), 3);
    assert_eq!(answers[1]["adjacent"], false);
    assert_eq!(run(&["oracle", &chain, "0;1"]).0, 2);
    assert_eq!(run(&["oracle", &chain, "0,99"]).0, 2);
}

#[test]
fn text_format() {
    let (code, out, _) = run(&["example", "outer", "--n", "4", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("top_eigenvalue = 2.083333333333333"), "{out}");
    assert!(out.lines().all(|l| l.contains(" = ")));
}
