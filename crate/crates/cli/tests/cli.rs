use std::path::PathBuf;
use std::process::{Command, Output};

fn gutt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gutt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn algebra(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras").join(name).display().to_string()
}

#[test]
fn mul_prints_the_product() {
    let o = gutt(&["mul", "P", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "P*Q + (1/2)z E");
    let o = gutt(&["mul", "1", "Q^3"]);
    assert_eq!(stdout(&o).trim(), "Q^3");
}

#[test]
fn mul_at_a_value_and_by_route() {
    let o = gutt(&["mul", "P", "Q", "--z", "-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "P*Q - E");
    for method in ["pbw", "graded", "bch"] {
        let o = gutt(&["mul", "P^2", "Q^2", "--method", method, "--check"]);
        assert_eq!(o.status.code(), Some(0), "{method}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), "P^2*Q^2 + 2z P*Q*E + (1/2)z^2 E^2");
    }
}

#[test]
fn mul_on_an_algebra_file() {
    let o = gutt(&["--algebra", &algebra("sl2.json"), "mul", "E", "F"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "E*F + (1/2)z H");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let o = gutt(&["mul", "P*", "Q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"));
    assert_eq!(gutt(&["mul", "X", "Q"]).status.code(), Some(2));
    assert_eq!(gutt(&["--algebra", "/nonexistent.json", "mul", "P", "Q"]).status.code(), Some(2));
    assert_eq!(gutt(&["bch", "--max-n", "13"]).status.code(), Some(2));
    assert_eq!(gutt(&["frobnicate"]).status.code(), Some(2));
    let o = gutt(&["--algebra", "sl2", "verify", "nilpotent"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not nilpotent"));
}

#[test]
fn bch_table() {
    let o = gutt(&["bch", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("n=2 XY 1/2"), "{text}");
    assert!(text.contains("n=2 YX -1/2"), "{text}");
    let o = gutt(&["bch", "--max-n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_n"], 3);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_assoc_passes() {
    let o = gutt(&["--max-degree", "3", "verify", "assoc", "--random", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    assert!(text.contains("assoc/associativity"));
}

#[test]
fn growth_experiment_reports_bound_failure() {
    let o = gutt(&["experiment", "heisenberg-growth"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let o = gutt(&["experiment", "heisenberg-growth", "--R", "0", "--eps", "0.2"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("fails at k = [8, 9, 10, 11, 12]"), "{text}");
    assert!(text.contains("PASS lower bound 2^-k"), "{text}");
}

#[test]
fn no_exp_and_negative_control() {
    let o = gutt(&["experiment", "no-exp", "--Nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS S_N >= N"));
    // the falsified constant must fail, which is the expected outcome
    let o = gutt(&["--max-degree", "3", "experiment", "negative-control", "--random", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("FAIL "));
}

#[test]
fn experiment_writes_outputs() {
    let dir = std::env::temp_dir().join(format!("gutt-cli-test-{}", std::process::id()));
    let o = gutt(&[
        "--max-degree", "3", "--out", dir.to_str().unwrap(), "--format", "csv",
        "experiment", "cn-estimate", "--random", "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("estimate_id,params,lhs,rhs,ratio,pass"));
    let csv = std::fs::read_to_string(dir.join("cn-estimate.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(dir.join("cn-estimate.txt").exists());
    std::fs::remove_dir_all(&dir).ok();
}
