use std::io::Write;
use std::process::{Command, Output, Stdio};

use densitymod::lorentz::{h_matrix, random_kan, LorentzMatrix};
use rand::SeedableRng;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_densitymod"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn classify_finite_submodule() {
    let o = run(&["classify", "--n", "2", "--lambda", "-1/2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["D"], 8);
    let sets = v["invariant_sets"].as_array().unwrap();
    assert_eq!(sets.len(), 1);
    assert_eq!(sets[0]["nodes"], serde_json::json!([0, 1]));
    assert_eq!(sets[0]["dimension"], 4);
}

#[test]
fn classify_two_submodules_on_the_circle() {
    let o = run(&["classify", "--n", "1", "--lambda", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["agreement"], true);
    let subs: Vec<&Value> = v["unitarity"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|u| u["role"] == "submodule" && u["unitary"] == true)
        .collect();
    assert_eq!(subs.len(), 2);
}

#[test]
fn classify_generic_is_simple() {
    let o = run(&["classify", "--n", "2", "--lambda", "1/7"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["simple"], true);
    assert_eq!(v["agreement"], true);
}

#[test]
fn open_cases_exit_zero_with_flag() {
    for lam in ["3/2", "1/2"] {
        let o = run(&["classify", "--n", "2", "--lambda", lam]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert_eq!(v["discrepancy-documented"], true);
        let d = &v["discrepancies"][0];
        assert_eq!(d["kind"], densitymod::gk::DISCREPANCY_KIND);
        assert_eq!(d["readings"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["classify", "--n", "2", "--lambda", "abc"])), 2);
    assert_eq!(code(&run(&["classify", "--n", "7", "--lambda", "1/3"])), 2);
    assert_eq!(code(&run(&["classify", "--n", "2"])), 2);
    assert_eq!(code(&run(&["classify", "--n", "2", "--lambda", "1/3", "--format", "csv"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let o = bin().args(["classify", "--n", "1", "--lambda", "1/3"]).env("DENSITYMOD_THREADS", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn thread_cap_is_honoured() {
    let o = bin().args(["classify", "--n", "1", "--lambda", "1/3"]).env("DENSITYMOD_THREADS", "1").output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_passes_and_control_fails_when_forced() {
    let o = run(&["verify-theorem1", "--n", "2", "--lambda", "1/3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["max_chain"].as_f64().unwrap() <= 1e-9);

    let o = run(&["verify-theorem1", "--n", "1", "--lambda", "1/2+1/1*i"]);
    assert_eq!(code(&o), 0);

    let o = run(&["verify-theorem1", "--n", "2", "--lambda", "1/3", "--force-nu-offset", "1/2"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(v["max_intertwining"].as_f64().unwrap() >= 1e-2);
}

#[test]
fn verify_text_summary() {
    let o = run(&["verify-theorem1", "--n", "1", "--lambda", "-1/2", "--grid", "20", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("Dil ↦ 1·H") && s.trim_end().ends_with("PASS"));
}

#[test]
fn iwasawa_identity_and_h() {
    let o = run_stdin(&["iwasawa", "-"], "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["t"], 0.0);
    assert!(v["a"].as_array().unwrap().iter().all(|x| x.as_f64() == Some(0.0)));

    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("h07.csv");
    std::fs::write(&path, h_matrix(2, 0.7).to_csv()).unwrap();
    let o = run(&["iwasawa", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!((json(&o)["t"].as_f64().unwrap() - 0.7).abs() < 1e-12);
}

#[test]
fn iwasawa_round_trip_from_file() {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let (g, _, t, a) = random_kan(&mut r, 3);
    let o = run_stdin(&["iwasawa", "-"], &g.to_csv());
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["t"].as_f64().unwrap() - t).abs() < 1e-9);
    for (x, y) in v["a"].as_array().unwrap().iter().zip(&a) {
        assert!((x.as_f64().unwrap() - y).abs() < 1e-9);
    }
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);

    let o = run_stdin(&["iwasawa", "-", "--format", "csv"], &g.to_csv());
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("# k\n"));
    assert_eq!(s.lines().filter(|l| !l.starts_with('#')).count(), 4 + 3);
}

#[test]
fn iwasawa_rejects_invalid_input() {
    assert_eq!(code(&run_stdin(&["iwasawa", "-"], "1,0,0\n0,2,0\n0,0,1\n")), 3);
    assert_eq!(code(&run_stdin(&["iwasawa", "-"], "1,0\n0\n")), 3);
    assert_eq!(code(&run(&["iwasawa", "/nonexistent/matrix.csv"])), 3);
    let flip = LorentzMatrix::identity(1).to_csv().replacen("1.00000000000000000e0", "-1.00000000000000000e0", 1);
    assert_eq!(code(&run_stdin(&["iwasawa", "-"], &flip)), 3);
}

#[test]
fn selftest_quick_is_deterministic() {
    let a = run(&["selftest", "--quick", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    let b = run(&["selftest", "--quick", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
}
