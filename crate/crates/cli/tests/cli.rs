use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = "[-1 - i + k]*x^2 + x*[-1 - i + j - k]*x + [-i - j + k]*x*[-1 + i + j + k]*x + 6*i";

fn algzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algzero")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = algzero(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn worked_example_passes_every_check() {
    let out = algzero(&["worked-example"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains(" PASS ")).count(), 7, "{text}");
}

#[test]
fn certify_example() {
    let (code, v) = json(&["certify", "--real", "--map", EXAMPLE]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["certificate"]["kind"], "NoRealZero");
    assert_eq!(v["results"]["replayed"], true);
}

#[test]
fn solve_example_finds_nothing_and_says_why() {
    let (code, v) = json(&["solve", "--map", EXAMPLE]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["zeros"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["nonexistence"]["kind"], "NoRealZero");
}

#[test]
fn solve_cubic_finds_verified_zeros() {
    let (code, v) = json(&["solve", "--map", "x^3 + i*x + 1", "--seed", "3"]);
    assert_eq!(code, 0);
    let zeros = v["results"]["zeros"].as_array().unwrap();
    assert!(!zeros.is_empty());
    for z in zeros {
        assert!(z["residual"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn output_is_deterministic_for_a_seed() {
    let a = algzero(&["--json", "solve", "--map", "x^3 + j*x*i + 2", "--seed", "5"]);
    let b = algzero(&["--json", "solve", "--map", "x^3 + j*x*i + 2", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_reports_leading_form_status() {
    let (code, v) = json(&["check", "--map", EXAMPLE]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["maps"][0]["degree"], 2);
    assert_eq!(v["results"]["nondegeneracy"]["kind"], "NondegenerateReal");

    let (code, v) = json(&["check", "--algebra", "mat:2", "--map", "E11*x + 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["nondegeneracy"]["kind"], "DegenerateWitness");
}

#[test]
fn degree_estimate_of_cube() {
    let (code, v) = json(&["degree-estimate", "--map", "x^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["value"], 3);
}

#[test]
fn degree_estimate_of_degenerate_form() {
    let (code, _) = json(&["degree-estimate", "--algebra", "mat:2", "--map", "E11*x"]);
    assert_eq!(code, 2);
}

#[test]
fn algebra_info_octonions() {
    let (code, v) = json(&["algebra", "info", "--algebra", "octonions"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], 8);
    assert_eq!(v["results"]["associative"], false);
    assert_eq!(v["results"]["composition_norm"], true);
}

#[test]
fn map_from_file_and_hermitian_subspace() {
    let dir = std::env::temp_dir().join(format!("algzero-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("map.txt");
    std::fs::write(&file, "# cube plus identity\nx*x*x + 1\n").unwrap();
    let arg = format!("@{}", file.display());
    let (code, v) = json(&["check", "--algebra", "cmat-as-real:2", "--subspace", "hermitian", "--map", &arg]);
    std::fs::remove_dir_all(&dir).ok();
    // Nilpotent complex points make the exact test inconclusive; the
    // sphere probe still sees a positive minimum.
    assert_eq!(code, 2, "{v}");
    assert_eq!(v["config"]["subspace"], "hermitian");
    assert_eq!(v["results"]["probe"]["verdict"], "numerically-nondegenerate");
}

#[test]
fn bad_input_exits_with_one() {
    let (code, v) = json(&["solve", "--algebra", "no-such-algebra", "--map", "x"]);
    assert_eq!(code, 1);
    assert!(v["results"]["error"].as_str().unwrap().contains("no-such-algebra"));

    let (code, _) = json(&["solve", "--map", "x +* 1"]);
    assert_eq!(code, 1);
}
