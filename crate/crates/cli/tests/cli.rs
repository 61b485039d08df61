use std::process::{Command, Output};

use serde_json::Value;

fn dyadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyadic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn minpoly_both_reports_equality() {
    let o = dyadic(&["minpoly", "--n", "4", "--form", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equal: true"));
}

#[test]
fn sine_basis_matrix_matches_printed_csc3() {
    let o = dyadic(&["matrix", "--n", "4", "--r", "-3", "--basis", "sin", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2,5,7,8\n7,2,-8,5\n5,8,2,-7\n-8,7,-5,2\n");
}

#[test]
fn even_power_has_no_sine_form() {
    assert_eq!(dyadic(&["matrix", "--n", "4", "--r", "16", "--basis", "sin"]).status.code(), Some(2));
}

#[test]
fn tex_output_carries_scale() {
    let o = dyadic(&["matrix", "--n", "4", "--r", "7", "--format", "tex"]);
    let s = stdout(&o);
    assert!(s.starts_with("\\frac{1}{2^{6}}\\begin{pmatrix}"), "{s}");
    assert!(s.contains("35 & 21 & 7 & 1"));
}

#[test]
fn verify_at_128_bits_uses_half_precision_tolerance() {
    let o = dyadic(&["verify", "--n", "4", "--r", "16", "--precision", "128", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["log2_tolerance"], -64.0);
}

#[test]
fn out_file_receives_data() {
    let dir = std::env::temp_dir().join(format!("dyadic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    let o = dyadic(&["matrix", "--n", "3", "--r", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["entries"], serde_json::json!([["3", "1"], ["-1", "3"]]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn zeta_binomial_reports_terms() {
    let o = dyadic(&["zeta", "--s", "2", "--n", "4", "--method", "binomial", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "converged");
    assert!(v["terms_used"].as_u64().unwrap() > 0);
}

#[test]
fn zeta_exhausted_terms_exit_1() {
    let o = dyadic(&["zeta", "--s", "3", "--n", "6", "--method", "binomial", "--max-terms", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weighted_method_needs_matching_s() {
    assert_eq!(dyadic(&["zeta", "--s", "4", "--n", "6", "--method", "weighted3"]).status.code(), Some(2));
}

#[test]
fn group_small_table() {
    let o = dyadic(&["group", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "1,2\n2,1\n");
}

#[test]
fn help_exits_0_and_unknown_flag_exits_2() {
    assert_eq!(dyadic(&["--help"]).status.code(), Some(0));
    assert_eq!(dyadic(&["group", "--n", "5", "--bogus"]).status.code(), Some(2));
}
