use std::process::{Command, Output};

use cde_core::tensor::{c, kron, ComplexMatrix, ComplexVector};
use serde_json::Value;

fn cde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cde"))
        .args(args)
        .env_remove("CDE_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn solve_near_shell_finds_two_solutions() {
    let out = cde(&["solve", "--E", "1.4142135", "--p", "1,0,0", "--m", "1", "--alpha", "0", "--branch", "mixed", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["kernel_dimension"], 2);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 2);
    for s in sols {
        let u: ComplexVector = serde_json::from_value(s.clone()).unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn solve_off_shell_is_empty() {
    let out = cde(&["solve", "--E", "2", "--p", "0.5,0,0", "--m", "1", "--alpha", "0.3,0.1", "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["kernel_dimension"], 0);
}

#[test]
fn cpt_real_alpha_is_c_invariant() {
    let out = cde(&["cpt", "--alpha", "0.3", "--check", "C"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["invariant"], true);
    assert_eq!(v["alpha_out"][0], 0.3);
    let v = json(&cde(&["cpt", "--alpha", "0,0.5", "--check", "CP"]));
    assert_eq!(v["invariant"], true);
    let v = json(&cde(&["cpt", "--alpha", "0.5", "--check", "CP"]));
    assert_eq!(v["invariant"], false);
}

#[test]
fn gamma_json_round_trips_through_matrix_schema() {
    let out = cde(&["gamma", "--rep", "chiral", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let g0 = ComplexMatrix::from_json(&v["gamma0"].to_string()).unwrap();
    let s1 = ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
    assert_eq!(g0, kron(&s1, &ComplexMatrix::identity(2)));
    assert_eq!(ComplexMatrix::from_json(&g0.to_json()).unwrap(), g0);
    let g5 = ComplexMatrix::from_json(&v["gamma5"].to_string()).unwrap();
    assert_eq!(g5.get(0, 0), c(-1.0, 0.0));
}

#[test]
fn gamma_table_is_human_readable() {
    let out = cde(&["gamma", "--rep", "chiral"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("gamma0:"));
    assert!(text.contains("gamma5:"));
}

#[test]
fn projector_complex_axis() {
    // q = (1, i, 1) has q·q = 1.
    let out = cde(&["projector", "--axis", "1,0,0,1,1,0", "--sign", "+", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["idempotency_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn dispersion_csv() {
    let out = cde(&["dispersion", "--m", "1", "--alpha", "0.4", "--pmax", "2", "--steps", "5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p_abs,E");
    assert_eq!(lines.len(), 6);
    let last: Vec<f64> = lines[5].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 2.0);
    assert!((last[1] - 5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn lagrangian_check_reports_second_order() {
    let out = cde(&["lagrangian-check", "--m", "1", "--alpha", "0.4", "--grid", "6,6,6,6", "--h", "0.1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let ratio = v["convergence_ratio"].as_f64().unwrap();
    assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
    assert!(v["action"].as_array().unwrap().len() == 2);
    assert!(v["max_residual"].as_f64().unwrap() > 0.0);
}

#[test]
fn covariance_passes() {
    let out = cde(&["covariance", "--rapidity", "0.5", "--axis", "0,0,1", "--m", "1", "--alpha", "0.9", "--p", "0.2,-0.3,0.1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["solutions"], 4);
}

#[test]
fn verify_all_is_deterministic() {
    let a = cde(&["verify-all", "--seed", "42", "--trials", "5", "--json"]);
    let b = cde(&["verify-all", "--seed", "42", "--trials", "5", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 42);
}

#[test]
fn seed_falls_back_to_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_cde"))
        .args(["verify-all", "--trials", "1", "--json"])
        .env("CDE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 7);
}

#[test]
fn tight_tolerance_fails_with_exit_one() {
    let out = cde(&["verify-all", "--trials", "2", "--tol-scale", "1e-30"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["solve", "--E", "1", "--p", "1,0"][..],
        &["solve", "--E", "1", "--p", "1,0,0", "--m", "-1"],
        &["cpt", "--alpha", "1,2,3"],
        &["cpt", "--alpha", "0.1", "--check", "X"],
        &["projector", "--axis", "0,0,0", "--sign", "+"],
        &["projector", "--axis", "0,0,1", "--sign", "up"],
        &["lagrangian-check", "--grid", "4,5,5,5"],
        &["covariance", "--rapidity", "20"],
        &["verify-all", "--tol-scale", "0"],
        &["gamma", "--rep", "dirac"],
        &["no-such-command"],
    ] {
        let out = cde(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&cde(&["--help"])), 0);
}
