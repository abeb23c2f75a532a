use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lamcom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamcom"))
        .args(args)
        .output()
        .expect("run lamcom")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn matrix(rows: &[&[f64]]) -> Value {
    let n = rows.len();
    let data: Vec<Value> = rows
        .iter()
        .flat_map(|r| r.iter().map(|&x| serde_json::json!([x, 0.0])))
        .collect();
    serde_json::json!({ "rows": n, "cols": rows[0].len(), "data": data })
}

fn pair(a: Value, b: Value) -> Value {
    serde_json::json!({ "A": a, "B": b, "declared_lambda": null, "label": "test" })
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn entry(m: &Value, i: usize, j: usize) -> (f64, f64) {
    let cols = m["cols"].as_u64().unwrap() as usize;
    let z = &m["data"][i * cols + j];
    (z[0].as_f64().unwrap(), z[1].as_f64().unwrap())
}

#[test]
fn generate_clock_shift_writes_pair_with_factor_i() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("pair.json");
    let out = lamcom(&["generate", "--kind", "clock-shift", "--n", "4", "--out", s(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(p["A"]["rows"], 4);
    assert_eq!(p["B"]["cols"], 4);
    let l = &p["declared_lambda"];
    assert!(l[0].as_f64().unwrap().abs() < 1e-15);
    assert!((l[1].as_f64().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn generate_pauli_xy_is_sigma_x_sigma_y() {
    let out = lamcom(&["generate", "--kind", "pauli-xy"]);
    assert_eq!(code(&out), 0);
    let p = stdout_json(&out);
    assert_eq!(entry(&p["A"], 0, 1), (1.0, 0.0));
    assert_eq!(entry(&p["A"], 1, 0), (1.0, 0.0));
    assert_eq!(entry(&p["B"], 0, 1), (0.0, -1.0));
    assert_eq!(entry(&p["B"], 1, 0), (0.0, 1.0));
}

#[test]
fn generate_cyclic_shift_rejects_non_root() {
    let out = lamcom(&["generate", "--kind", "cyclic-shift-diag", "--n", "4", "--lambda", "3,0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("λ^N ≠ 1"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn generate_missing_parameter_is_input_error() {
    let out = lamcom(&["generate", "--kind", "jordan2", "--lambda", "3,0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--x"));
}

#[test]
fn analyze_pauli_reports_minus_one() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    assert_eq!(code(&lamcom(&["generate", "--kind", "pauli-xy", "--out", s(&path)])), 0);
    let out = lamcom(&["analyze", s(&path)]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["status"], "UNIQUE");
    assert!((r["lambda_hat"][0].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert!(r["lambda_hat"][1].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(r["consistent"], true);
}

#[test]
fn analyze_nilpotent_factor_three_notes_quasi_nilpotency() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    let out = lamcom(&[
        "generate", "--kind", "nilpotent-diag", "--betas", "1,0;3,0;0.5,0", "--pivot", "1", "--lambda", "3,0",
        "--out", s(&path),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = lamcom(&["analyze", s(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = stdout_json(&out);
    assert_eq!(r["status"], "UNIQUE");
    assert!((r["lambda_hat"][0].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert_eq!(r["ab_quasi_nilpotent"], true);
    assert_eq!(r["consistent"], true);
}

#[test]
fn analyze_hermitian_pair_reports_no_factor() {
    let dir = TempDir::new().unwrap();
    let a = matrix(&[&[1.0, 2.0, 0.0], &[2.0, -1.0, 0.5], &[0.0, 0.5, 3.0]]);
    let b = matrix(&[&[0.0, 1.0, 1.0], &[1.0, 2.0, 0.0], &[1.0, 0.0, -2.0]]);
    let path = write(&dir, "h.json", &pair(a, b));
    let out = lamcom(&["analyze", s(&path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["status"], "NONE");
    assert!(stderr(&out).contains("no factor"));
}

#[test]
fn analyze_zero_products_reports_any() {
    let dir = TempDir::new().unwrap();
    let a = matrix(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let path = write(&dir, "z.json", &pair(a.clone(), a));
    let out = lamcom(&["analyze", s(&path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["status"], "ANY");
    assert!(stderr(&out).contains("λ = any"));
}

#[test]
fn analyze_malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"A\": 1}").unwrap();
    assert_eq!(code(&lamcom(&["analyze", s(&path)])), 2);
    assert_eq!(code(&lamcom(&["analyze", "/nonexistent/pair.json"])), 2);
}

#[test]
fn intertwine_pauli_gives_i_sigma_z() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    assert_eq!(code(&lamcom(&["generate", "--kind", "pauli-intertwiner", "--out", s(&path)])), 0);
    let out = lamcom(&["intertwine", s(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let u = &stdout_json(&out)["U"];
    let close = |(re, im): (f64, f64), (x, y): (f64, f64)| (re - x).abs() < 1e-10 && (im - y).abs() < 1e-10;
    assert!(close(entry(u, 0, 0), (0.0, 1.0)));
    assert!(close(entry(u, 1, 1), (0.0, -1.0)));
    assert!(close(entry(u, 0, 1), (0.0, 0.0)));
}

#[test]
fn intertwine_commuting_diagonal_gives_identity() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "d.json",
        &pair(matrix(&[&[1.0, 0.0], &[0.0, 2.0]]), matrix(&[&[3.0, 0.0], &[0.0, -1.0]])),
    );
    let out = lamcom(&["intertwine", s(&path)]);
    assert_eq!(code(&out), 0);
    let u = &stdout_json(&out)["U"];
    for i in 0..2 {
        for j in 0..2 {
            let (re, im) = entry(u, i, j);
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((re - want).abs() < 1e-10 && im.abs() < 1e-10);
        }
    }
}

#[test]
fn intertwine_failing_condition_exits_one() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "f.json",
        &pair(matrix(&[&[1.0, 0.0], &[0.0, 2.0]]), matrix(&[&[0.0, 1.0], &[1.0, 0.0]])),
    );
    let out = lamcom(&["intertwine", s(&path)]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn intertwine_non_hermitian_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "n.json",
        &pair(matrix(&[&[0.0, 1.0], &[0.0, 0.0]]), matrix(&[&[1.0, 0.0], &[0.0, 1.0]])),
    );
    assert_eq!(code(&lamcom(&["intertwine", s(&path)])), 2);
}

#[test]
fn commutant_examples() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", &matrix(&[&[1.0, 0.0], &[0.0, 2.0]]));
    let out = lamcom(&["commutant", s(&d), "--lambda", "2,0"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["dimension"], 1);
    assert_eq!(entry(&r["basis"][0], 1, 0), (1.0, 0.0));
    assert_eq!(entry(&r["basis"][0], 0, 1), (0.0, 0.0));

    let id = write(&dir, "i.json", &matrix(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]));
    let out = lamcom(&["commutant", s(&id), "--lambda", "1,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["dimension"], 9);

    let j = write(&dir, "j.json", &matrix(&[&[1.0, 1.0], &[0.0, 1.0]]));
    assert_eq!(code(&lamcom(&["commutant", s(&j), "--lambda", "1,0"])), 2);
}

#[test]
fn commutant_accepts_negative_factor() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", &matrix(&[&[1.0, 0.0], &[0.0, -1.0]]));
    let out = lamcom(&["commutant", s(&d), "--lambda", "-1,0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout_json(&out)["dimension"], 2);
}

#[test]
fn stone_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &matrix(&[&[1.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[0.0, 0.0, 3.0]]));
    let out = lamcom(&["stone", s(&a), "--a", "1.5", "--b", "2.5", "--epsilon", "1e-3"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert!(r["exact_error"].as_f64().unwrap() < 5e-3);
    assert!((entry(&r["projection"], 1, 1).0 - 1.0).abs() < 5e-3);

    let out = lamcom(&["stone", s(&a), "--a", "0.5", "--b", "3.5", "--epsilon", "1e-3"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    for i in 0..3 {
        assert!((entry(&r["projection"], i, i).0 - 1.0).abs() < 5e-3);
    }

    let out = lamcom(&["stone", s(&a), "--a", "1", "--b", "2.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn stone_gauss_legendre_rule() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &matrix(&[&[1.0, 0.0], &[0.0, 2.0]]));
    let out = lamcom(&[
        "stone", s(&a), "--a", "1.5", "--b", "2.5", "--epsilon", "1e-2", "--rule", "gauss-legendre", "--nodes", "800",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout_json(&out)["exact_error"].as_f64().unwrap() < 5e-2);
}

#[test]
fn suite_single_trial_is_deterministic() {
    let a = lamcom(&["suite", "--seed", "42", "--trials", "1"]);
    let b = lamcom(&["suite", "--seed", "42", "--trials", "1"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["failed"], 0);
}

#[test]
fn suite_absurd_tolerance_reports_failures_as_data() {
    let out = lamcom(&["suite", "--seed", "3", "--trials", "2", "--tol", "1e-18"]);
    assert_eq!(code(&out), 1);
    let r = stdout_json(&out);
    assert!(r["failed"].as_u64().unwrap() > 0);
    let f = &r["failures"][0];
    assert!(f["property_name"].is_string());
    assert!(f["magnitude"].is_number() || f["magnitude"].is_null());
}

#[test]
fn invalid_suite_config_exits_two() {
    assert_eq!(code(&lamcom(&["suite", "--trials", "0"])), 2);
    assert_eq!(code(&lamcom(&["suite", "--tol", "-1"])), 2);
}

#[test]
fn out_flag_redirects_any_report() {
    let dir = TempDir::new().unwrap();
    let pair_path = dir.path().join("p.json");
    let report = dir.path().join("r.json");
    assert_eq!(code(&lamcom(&["generate", "--kind", "pauli-xy", "--out", s(&pair_path)])), 0);
    let out = lamcom(&["analyze", s(&pair_path), "--out", s(&report)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["status"], "UNIQUE");
}
