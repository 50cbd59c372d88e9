use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sliceq::{FunctionFile, QJet, Quaternion};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_str().unwrap().to_string()
}

fn sliceq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sliceq")).args(args).output().expect("failed to run sliceq")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn exp_then_eval_at_j_gives_i() {
    let dir = tempfile::tempdir().unwrap();
    let saved = tmp(&dir, "exp.json");
    let out = sliceq(&["exp", "--fn", &fixture("i_plus_qj.json"), "--route", "both", "--save", saved.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let rep = tmp(&dir, "eval.json");
    let out = sliceq(&["eval", "--fn", saved.to_str().unwrap(), "--at", "j", "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("F(j) = i"), "{}", stdout(&out));
    let v: Vec<f64> = serde_json::from_value(report(&rep)["value"].clone()).unwrap();
    assert!((Quaternion::new(v[0], v[1], v[2], v[3]) - Quaternion::I).norm() < 1e-10);
}

#[test]
fn obstruction_exit_code_and_message() {
    let dir = tempfile::tempdir().unwrap();
    let neg = tmp(&dir, "neg.json");
    let out = sliceq(&["exp", "--fn", &fixture("obstruction_linear.json"), "--negate", "--save", neg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rep = tmp(&dir, "log.json");
    let out = sliceq(&["log", "--fn", neg.to_str().unwrap(), "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("non-real isolated zero of g_v with g(q0) != 1"), "{text}");
    assert!(text.contains("zero q0 = i, g(q0) = -1"), "{text}");
    let doc = report(&rep);
    assert_eq!(doc["command"], "log");
    assert_eq!(doc["obstruction"]["zero"].as_array().unwrap().len(), 4);
    assert_eq!(doc["obstruction"]["g0_value"].as_array().unwrap().len(), 4);
}

#[test]
fn log_of_constant_minus_five() {
    let dir = tempfile::tempdir().unwrap();
    let rep = tmp(&dir, "log.json");
    let out = sliceq(&["log", "--fn", &fixture("minus_five.json"), "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = report(&rep);
    assert_eq!(doc["route"], "minus_one_shift");
    let a0: Vec<f64> = serde_json::from_value(doc["coefficients"][0].clone()).unwrap();
    assert!((a0[0] - 5f64.ln()).abs() < 1e-15 && (a0[1] - std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn cossin_trivial_pair() {
    let dir = tempfile::tempdir().unwrap();
    let rep = tmp(&dir, "cs.json");
    let out = sliceq(&["cossin", "--a0", &fixture("one.json"), "--a1", &fixture("zero.json"), "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let gamma: Vec<f64> = serde_json::from_value(report(&rep)["gamma"].clone()).unwrap();
    assert!(gamma.iter().all(|&g| g == 0.0));
}

#[test]
fn classify_real_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let rep = tmp(&dir, "cl.json");
    let out = sliceq(&["classify", "--fn", &fixture("q2_plus_1.json"), "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = report(&rep);
    let s = &doc["spherical_zeros"][0];
    assert!(s["alpha"].as_f64().unwrap().abs() < 1e-12);
    assert!((s["beta"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(doc["isolated_zeros"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // malformed input
    let bad = tmp(&dir, "bad.json");
    std::fs::write(&bad, "{\"kind\":\"qpoly\",\"coeffs\":[[1,2]]}").unwrap();
    assert_eq!(code(&sliceq(&["log", "--fn", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&sliceq(&["log", "--fn", tmp(&dir, "missing.json").to_str().unwrap()])), 1);
    assert_eq!(code(&sliceq(&["eval", "--fn", &fixture("one.json"), "--at", "1+x"])), 1);
    // G(0) = 0 violates the precondition of log
    let rep = tmp(&dir, "pre.json");
    let out = sliceq(&["log", "--fn", &fixture("zero.json"), "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&rep)["error"]["exit_code"], 2);
    // a direct series that cannot converge in its default number of terms
    let big = tmp(&dir, "big.json");
    std::fs::write(&big, "{\"kind\":\"qpoly\",\"coeffs\":[[0,40,0,0]]}").unwrap();
    assert_eq!(code(&sliceq(&["exp", "--fn", big.to_str().unwrap(), "--route", "both"])), 4);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = tmp(&dir, "g.json");
    sliceq(&["exp", "--fn", &fixture("obstruction_mixed.json"), "--save", g.to_str().unwrap()]);
    let run = |name: &str| {
        let rep = tmp(&dir, name);
        sliceq(&["log", "--fn", g.to_str().unwrap(), "--out", rep.to_str().unwrap()]);
        std::fs::read(rep).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
    let verify = |name: &str| {
        let rep = tmp(&dir, name);
        let out = sliceq(&["verify", "--suite", "identities", "--out", rep.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        std::fs::read(rep).unwrap()
    };
    assert_eq!(verify("v1.json"), verify("v2.json"));
}

#[test]
fn verify_reports_checks() {
    let dir = tempfile::tempdir().unwrap();
    let rep = tmp(&dir, "v.json");
    let out = sliceq(&["verify", "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let doc = report(&rep);
    assert_eq!(doc["pass"], true);
    for c in doc["checks"].as_array().unwrap() {
        assert!(c["name"].is_string() && c["pass"].is_boolean() && c["max_residual"].is_number());
    }
}

#[test]
fn fixtures_match_their_products() {
    let (i, j) = (Quaternion::I, Quaternion::J);
    let lin = |a: Quaternion| QJet::new(vec![-a, Quaternion::ONE], 3);
    let cj = QJet::constant(j, 3);
    let cases = [
        ("obstruction_linear.json", lin(i).star(&cj)),
        ("obstruction_square.json", lin(i).star(&lin(i)).star(&cj)),
        ("obstruction_mixed.json", lin(i).star(&lin(j.scale(2.0))).star(&QJet::constant(i.scale(-2.0) + j, 3))),
    ];
    for (name, want) in cases {
        let got = FunctionFile::read(Path::new(&fixture(name))).unwrap().to_qjet(3);
        assert_eq!(got.coeffs(), want.coeffs(), "{name}");
    }
}
