use std::process::{Command, Output};

use serde_json::Value;

fn equivar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equivar")).args(args).env_remove("EQUIVAR_JOBS").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = equivar(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn norm_compare_exits_zero() {
    let v = json(&["norm", "--group", "dihedral:6", "--from", "D2", "--functor", "constZ", "--compare", "burnside-quotient"]);
    assert_eq!(v["schema"], "equivar.norm/1");
    assert_eq!(v["comparison"]["isomorphic"], true);
    let top = v["diagram"]["levels"].as_array().unwrap().iter().find(|l| l["subgroup"] == "D6").unwrap();
    assert_eq!(top["invariant_factors"], serde_json::json!([0, 0]));
}

#[test]
fn norm_from_other_reflection() {
    let v = json(&["norm", "--group", "dihedral:10", "--from", "D2[zt]", "--compare", "burnside-quotient"]);
    assert_eq!(v["comparison"]["isomorphic"], true);
}

#[test]
fn reciprocity_verify_exits_zero() {
    let out = equivar(&["reciprocity", "--group", "dihedral:6", "--sub", "D2", "--verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N_D2^D6(a + b) = N_D2^D6(a)"));
    assert!(text.contains("verified: 20 Burnside pairs"));
}

#[test]
fn reciprocity_latex_and_json() {
    let out = equivar(&["reciprocity", "--group", "dihedral:6", "--sub", "D2", "--latex"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("N_{D_{2}}^{D_{6}}"));
    let v = json(&["reciprocity", "--group", "dihedral:6", "--sub", "D2", "--json"]);
    assert_eq!(v["schema"], "equivar.reciprocity/1");
    assert_eq!(v["summands"].as_array().unwrap().len(), 4);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["witt", "--ring", "constZ", "--p", "3", "--levels", "2", "--ops", "R,F,V", "--coinvariants"];
    assert_eq!(equivar(&args).stdout, equivar(&args).stdout);
}

#[test]
fn marks_of_d6() {
    let v = json(&["marks", "--group", "dihedral:6"]);
    assert_eq!(v["subgroups"], serde_json::json!(["e", "D2", "mu_3", "D6"]));
    assert_eq!(v["marks"][0], serde_json::json!([6, 0, 0, 0]));
    assert_eq!(v["marks"][3], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn burnside_product() {
    let v = json(&["burnside", "mul", "--group", "dihedral:6", "--a", "[G/D2]", "--b", "[G/D2]"]);
    assert_eq!(v["result"]["text"], "[G/D2] + [G/e]");
    let v = json(&["burnside", "norm", "--group", "dihedral:6", "--from", "D2", "--to", "G", "--x", "[D2/e]", "--check"]);
    assert_eq!(v["coinduction_check"], true);
}

#[test]
fn coinduce_counts() {
    let v = json(&["coinduce", "--group", "dihedral:14", "--sub", "D2", "--labels", "a,b"]);
    assert_eq!(v["fixed"], 2);
    assert_eq!(v["size"], 128);
    let orbits = v["orbits"].as_array().unwrap();
    let count = |s: &str| orbits.iter().find(|o| o["stabilizer"] == s).map(|o| o["count"].as_u64().unwrap());
    assert_eq!(count("D2"), Some(14));
    assert_eq!(count("e"), Some(2));
}

#[test]
fn hr0_and_homology() {
    let v = json(&["hr0", "--ring", "constZ", "--m", "3", "--compare", "burnside-quotient"]);
    assert_eq!(v["comparison"]["isomorphic"], true);
    let v = json(&["hr", "homology", "--ring", "constZ", "--m", "3", "--degree", "1"]);
    assert_eq!(v["degree"], 1);
    assert!(v["diagram"]["levels"].as_array().unwrap().iter().all(|l| l["invariant_factors"].as_array().unwrap().is_empty()));
}

#[test]
fn witt_levels() {
    let v = json(&["witt", "--ring", "constZ", "--p", "3", "--levels", "3", "--coinvariants", "--ghost"]);
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);
    assert_eq!(v["levels"][2]["values"]["e"]["invariant_factors"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["coinvariants"][0]["values"]["D2"]["invariant_factors"], serde_json::json!([3]));
    assert!(v["ghost"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        vec!["marks", "--group", "dihedral:7"],
        vec!["marks", "--group", "quaternion:8"],
        vec!["norm", "--group", "dihedral:6", "--from", "mu_3"],
        vec!["burnside", "mul", "--group", "dihedral:6", "--a", "[G/X]", "--b", "1"],
        vec!["hr0", "--m", "4"],
        vec!["witt", "--p", "3", "--ops", "Q"],
        vec!["frobnicate"],
    ] {
        assert_eq!(equivar(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budgets_are_flags() {
    let out = equivar(&["marks", "--group", "dihedral:24", "--max-order", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
    let out = equivar(&["hr", "homology", "--m", "3", "--degree", "2", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_runs_selected_regressions() {
    let out = Command::new(env!("CARGO_BIN_EXE_equivar")).args(["check", "regressions", "--only", "R1,R5"]).env("EQUIVAR_JOBS", "2").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS R1") && text.contains("PASS R5"));
    assert!(text.contains("2 passed, 0 failed"));
}
