use std::path::{Path, PathBuf};
use std::process::Command;

use jordanis_cli::file::AlgebraFile;
use serde_json::Value;
use tempfile::TempDir;

const PSI1: &str = r#"{"dim": 2, "products": [
  {"i": 1, "j": 1, "coeffs": [1, 0]},
  {"i": 2, "j": 2, "coeffs": [0, 1]}
]}"#;

const PSI2: &str = r#"{"dim": 2, "products": [
  {"i": 1, "j": 1, "coeffs": [1, 0]},
  {"i": 2, "j": 2, "coeffs": [-1, 0]},
  {"i": 1, "j": 2, "coeffs": [0, 1]}
], "commutative_close": true}"#;

const UNIT_ACTION: &str = r#"{"dim": 2, "products": [
  {"i": 1, "j": 1, "coeffs": [1, 0]},
  {"i": 1, "j": 2, "coeffs": [0, 1]},
  {"i": 2, "j": 1, "coeffs": [0, 1]}
]}"#;

const SQUARE_ZERO: &str = r#"{"dim": 2, "products": [{"i": 1, "j": 1, "coeffs": [0, 1]}]}"#;

const TRIVIAL3: &str = r#"{"dim": 3}"#;

struct Run {
    code: i32,
    json: Value,
    stdout: String,
    stderr: String,
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_jordanis"))
        .args(args)
        .env_remove("JORDANIS_SEED")
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        json: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run_json(cmd: &str, path: &Path, extra: &[&str]) -> Run {
    let p = path.to_str().unwrap();
    let mut args = vec!["--json", cmd, p];
    args.extend_from_slice(extra);
    run(&args)
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn validate_psi2_is_semisimple_but_not_formally_real() {
    let dir = TempDir::new().unwrap();
    let r = run_json("validate", &write(&dir, "psi2.json", PSI2), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = &r.json["verdicts"];
    assert_eq!(v["is_jordan"], true);
    assert_eq!(v["is_semisimple"], true);
    assert_eq!(v["is_formally_real"], false);
}

#[test]
fn validate_trivial_algebra_has_degree_one() {
    let dir = TempDir::new().unwrap();
    let r = run_json("validate", &write(&dir, "t.json", TRIVIAL3), &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["verdicts"]["is_nilpotent"], true);
    assert_eq!(r.json["values"]["nilpotency_degree"], 1);
}

#[test]
fn validate_emitted_sym2_reports_rank_and_peirce_constant() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sym2.json");
    let r = run(&["classical", "sym-r", "2", "--emit", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run_json("validate", &path, &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["verdicts"]["is_formally_real"], true);
    assert_eq!(r.json["values"]["rank"], 2);
    assert_eq!(r.json["values"]["peirce_d"], 1);
}

#[test]
fn validate_rejects_non_jordan_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"dim": 3, "products": [
      {"i": 1, "j": 1, "coeffs": [0, 1, 0]},
      {"i": 1, "j": 2, "coeffs": [0, 0, 1]},
      {"i": 2, "j": 2, "coeffs": [0, 0, 1]}
    ], "commutative_close": true}"#;
    let r = run_json("validate", &write(&dir, "nj.json", text), &[]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["verdicts"]["is_jordan"], false);
    assert!(r.json["error"].is_string());
}

#[test]
fn curvature_psi1_is_ricci_flat_einstein() {
    let dir = TempDir::new().unwrap();
    let r = run_json("curvature", &write(&dir, "psi1.json", PSI1), &["--ricci", "--scalar"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["verdicts"]["einstein"], true);
    assert_eq!(f(&r.json["values"]["einstein_constant"]), 0.0);
    for x in r.json["tensors"]["Ric"]["data"].as_array().unwrap() {
        assert!(f(x).abs() < 1e-12);
    }
}

#[test]
fn curvature_psi2_reports_computed_ricci() {
    // Ric = diag(1/2, -3/2) from the trace definition, so not Einstein
    let dir = TempDir::new().unwrap();
    let r = run_json("curvature", &write(&dir, "psi2.json", PSI2), &["--ricci", "--scalar"]);
    assert_eq!(r.code, 0);
    let ric: Vec<f64> = r.json["tensors"]["Ric"]["data"].as_array().unwrap().iter().map(f).collect();
    let want = [0.5, 0.0, 0.0, -1.5];
    for (x, y) in ric.iter().zip(want) {
        assert!((x - y).abs() < 1e-12, "{ric:?}");
    }
    assert!((f(&r.json["values"]["scalar_curvature"]) + 1.0).abs() < 1e-12);
    assert_eq!(r.json["verdicts"]["einstein"], false);
}

#[test]
fn curvature_lists_entry_and_flags_cyclic_sum() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "u.json", UNIT_ACTION);
    let r = run_json("curvature", &p, &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["verdicts"]["cyclic_sum_vanishes"], false);
    let notes: Vec<&str> = r.json["notes"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert!(notes.contains(&"R(e1,e1)e2 = -e2"), "{notes:?}");
    assert!(notes.contains(&"cyclic sum (e1,e1,e2) = -e2"), "{notes:?}");
    let gamma: Vec<f64> = r.json["tensors"]["connection"]["data"].as_array().unwrap().iter().map(f).collect();
    // nabla_{e1} e1 = e1 / 2, nabla_{e1} e2 = e2, nabla_{e2} = 0
    assert_eq!(gamma, vec![0.5, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);

    let text = run(&["curvature", p.to_str().unwrap()]);
    assert!(text.stdout.contains("note: R(e1,e1)e2 = -e2"));
}

#[test]
fn curvature_sectional_of_dependent_pair_is_domain_error() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "psi1.json", PSI1);
    let r = run_json("curvature", &p, &["--sectional", "1,1"]);
    assert_eq!(r.code, 1);
    assert!(r.json["error"].as_str().unwrap().contains("dependent"));
    let r = run_json("curvature", &p, &["--sectional", "1,2"]);
    assert_eq!(r.code, 0);
    assert!(r.json["values"]["sectional"].is_number());
    let r = run_json("curvature", &p, &["--sectional", "1,3"]);
    assert_eq!(r.code, 2);
}

#[test]
fn einstein_sym2_matches_closed_form() {
    let r = run(&["--json", "einstein", "sym-r", "2"]);
    assert_eq!(r.code, 0);
    let t = f(&r.json["values"]["t_star"]);
    assert!((t - 0.5 * (5.0f64 / 6.0).ln()).abs() < 1e-15);
    assert!((t + 0.0911607).abs() < 1e-7);
    assert!(f(&r.json["values"]["einstein_residual"]) < 1e-8);
    assert!(f(&r.json["values"]["einstein_constant"]) < 0.0);
}

#[test]
fn einstein_spin4_and_scan_table() {
    let r = run(&["--json", "einstein", "spin", "4", "--scan", "-0.5", "0.5", "11"]);
    assert_eq!(r.code, 0);
    assert!((f(&r.json["values"]["t_star"]) - 0.5 * 0.75f64.ln()).abs() < 1e-15);
    let scan = &r.json["tensors"]["scan"];
    assert_eq!(scan["shape"], serde_json::json!([11, 3]));
    assert_eq!(scan["columns"], serde_json::json!(["t", "residual", "sc"]));
    let data: Vec<f64> = scan["data"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(data[0], -0.5);
    assert!((data[30] - 0.5).abs() < 1e-15);
}

#[test]
fn einstein_rank_one_and_bad_family() {
    let r = run(&["--json", "einstein", "sym-r", "1"]);
    assert_eq!(r.code, 1);
    assert!(r.json["error"].as_str().unwrap().contains("rank-one"));
    let r = run(&["einstein", "octonions", "3"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown family"));
}

#[test]
fn nilcert_square_zero_rules_out_einstein() {
    let dir = TempDir::new().unwrap();
    let r = run_json("nilcert", &write(&dir, "sz.json", SQUARE_ZERO), &[]);
    assert_eq!(r.code, 0);
    assert!(f(&r.json["values"]["trace_ric"]) < 0.0);
    assert_eq!(r.json["verdicts"]["annihilator_ric_nonnegative"], true);
    assert_eq!(r.json["verdicts"]["einstein_ruled_out"], true);
}

#[test]
fn nilcert_errors_are_domain_errors() {
    let dir = TempDir::new().unwrap();
    let r = run_json("nilcert", &write(&dir, "psi1.json", PSI1), &[]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["error"], "algebra is not nilpotent");
    let r = run_json("nilcert", &write(&dir, "t.json", TRIVIAL3), &[]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["error"], "algebra is trivial");
}

#[test]
fn emitted_files_reparse_to_identical_constants() {
    let dir = TempDir::new().unwrap();
    for (fam, n) in [("sym-r", "3"), ("herm-c", "2"), ("herm-h", "2"), ("spin", "5")] {
        let path = dir.path().join(format!("{fam}.json"));
        let r = run(&["--json", "classical", fam, n, "--emit", path.to_str().unwrap()]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.json["verdicts"]["round_trip_exact"], true);
        let text = std::fs::read_to_string(&path).unwrap();
        let first = AlgebraFile::parse(&text).unwrap();
        let (a, g) = first.build().unwrap();
        let again = AlgebraFile::from_algebra(&a, Some(g.matrix()), None);
        assert_eq!(again, first);
        assert_eq!(again.to_json(), text);
    }
}

#[test]
fn reports_are_deterministic_for_fixed_seed() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("h.json");
    run(&["classical", "herm-c", "3", "--emit", path.to_str().unwrap()]);
    let a = run_json("validate", &path, &["--seed", "17"]);
    let b = run_json("validate", &path, &["--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.json["seed"], 17);
    let env = Command::new(env!("CARGO_BIN_EXE_jordanis"))
        .args(["--json", "validate", path.to_str().unwrap()])
        .env("JORDANIS_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), a.stdout);
}

#[test]
fn tolerance_flag_is_recorded() {
    let dir = TempDir::new().unwrap();
    let r = run_json("validate", &write(&dir, "psi1.json", PSI1), &["--tol", "1e-6"]);
    assert_eq!(f(&r.json["tolerances"]["tol"]), 1e-6);
}

#[test]
fn invalid_files_exit_two_with_diagnostics() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("{\n  \"dim\": 2,\n  \"products\": [\n", "line 4"),
        (r#"{"dim": 2, "products": [{"i": 3, "j": 1, "coeffs": [0, 1]}]}"#, "products[0].i"),
        (
            r#"{"dim": 1, "products": [{"i": 1, "j": 1, "coeffs": [1]}, {"i": 1, "j": 1, "coeffs": [1]}]}"#,
            "products[1]",
        ),
        (r#"{"dim": 2, "metric": [[1, 2], [2, 1]]}"#, "metric"),
    ];
    for (k, (text, needle)) in cases.iter().enumerate() {
        let p = write(&dir, &format!("bad{k}.json"), text);
        let r = run(&["validate", p.to_str().unwrap()]);
        assert_eq!(r.code, 2, "{text}");
        assert!(r.stderr.contains(needle), "{}", r.stderr);
    }
    let r = run(&["validate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(r.code, 2);
}
