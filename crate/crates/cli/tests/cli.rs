//! End-to-end tests of the quantrap binary: schemas, round-trip precision,
//! determinism, configuration merging and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn quantrap() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quantrap"))
}

fn run_ok(args: &[&str]) -> String {
    let out = quantrap().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn spectrum_emits_the_degenerate_alpha_zero_table() {
    let text = run_ok(&["spectrum", "--alpha", "0", "--n-max", "5"]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["n", "p", "E"]);
    assert_eq!(rows.len(), 11);
    for row in &rows {
        let n: i64 = row[0].parse().unwrap();
        let p: f64 = row[1].parse().unwrap();
        let e: f64 = row[2].parse().unwrap();
        assert_eq!(p, 2.0 * n as f64);
        assert_eq!(e, (2.0 * n as f64) * (2.0 * n as f64));
    }
    // degenerate pairs E(n) = E(-n)
    let e_of = |n: i64| -> f64 {
        rows.iter()
            .find(|r| r[0].parse::<i64>().unwrap() == n)
            .unwrap()[2]
            .parse()
            .unwrap()
    };
    for n in 1..=5 {
        assert_eq!(e_of(n), e_of(-n));
    }
}

#[test]
fn csv_floats_reparse_to_the_library_values_bit_for_bit() {
    let text = run_ok(&["spectrum", "--alpha", "1.5707963267948966", "--n-max", "3"]);
    let (_, rows) = parse_csv(&text);
    let alpha = quantrap_core::ExtensionParameter::new(std::f64::consts::FRAC_PI_2);
    for row in rows {
        let n: i64 = row[0].parse().unwrap();
        let p: f64 = row[1].parse().unwrap();
        let e: f64 = row[2].parse().unwrap();
        assert_eq!(p.to_bits(), quantrap_core::momentum_eigenvalue(n, alpha).to_bits());
        assert_eq!(
            e.to_bits(),
            quantrap_core::energy_eigenvalue_alpha(n, alpha).to_bits()
        );
    }
}

#[test]
fn deficiency_all_matches_the_reference_table() {
    let text = run_ok(&["deficiency", "--all"]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["expression", "interval", "m", "n", "verdict"]);
    let expected = [
        ("first-order", "bounded(0..pi)", "1", "1", "extension-family(1)"),
        ("first-order", "half-line(0..+inf)", "0", "1", "no-extension"),
        ("second-order", "bounded(0..pi)", "2", "2", "extension-family(2)"),
        ("second-order", "half-line(0..+inf)", "1", "1", "extension-family(1)"),
        ("first-order", "full-line", "0", "0", "essentially-self-adjoint"),
    ];
    assert_eq!(rows.len(), expected.len());
    for (row, exp) in rows.iter().zip(expected) {
        assert_eq!(row[0], exp.0);
        assert_eq!(row[1], exp.1);
        assert_eq!(row[2], exp.2);
        assert_eq!(row[3], exp.3);
        assert_eq!(row[4], exp.4);
    }
}

#[test]
fn finite_well_row_matches_the_deep_well_solution() {
    let text = run_ok(&["finite-well", "--v0", "10000", "--n", "1"]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["n", "v0", "E_solved", "E_asymptote", "l2_dist"]);
    assert_eq!(rows.len(), 1);
    let e_solved: f64 = rows[0][2].parse().unwrap();
    let e_asym: f64 = rows[0][3].parse().unwrap();
    assert!((e_solved - 0.98738796).abs() <= 1e-6, "E_solved {e_solved}");
    assert!((e_asym - 0.987_267_604_5).abs() <= 1e-9, "E_asymptote {e_asym}");
}

#[test]
fn momentum_table_is_normalized_and_symmetric() {
    let text = run_ok(&["momentum", "--n", "1", "--p-max", "60", "--p-points", "1201"]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["p", "density"]);
    assert_eq!(rows.len(), 1201);
    let d: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    // peak at p = 0, even in p
    let mid = 600;
    assert!((d[mid] - 4.0 / (std::f64::consts::PI * std::f64::consts::PI)).abs() < 1e-6);
    for i in 0..mid {
        assert!((d[i] - d[1200 - i]).abs() < 1e-12);
    }
}

#[test]
fn evolve_emits_snapshot_rows() {
    let text = run_ok(&[
        "evolve",
        "--model",
        "well",
        "--n",
        "3",
        "--t-steps",
        "3",
        "--t-max",
        "6.283185307179586",
        "--grid-points",
        "201",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["t", "x", "re", "im", "prob"]);
    assert_eq!(rows.len(), 3 * 201);
    // probability column is |re + i im|^2
    for row in rows.iter().step_by(47) {
        let re: f64 = row[2].parse().unwrap();
        let im: f64 = row[3].parse().unwrap();
        let prob: f64 = row[4].parse().unwrap();
        assert!((prob - (re * re + im * im)).abs() <= 1e-15 * prob.max(1e-30));
    }
}

#[test]
fn identical_configs_produce_byte_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = quantrap()
            .args(["momentum", "--n", "2", "--p-points", "301", "--output"])
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn output_dir_env_var_roots_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = quantrap()
        .args(["spectrum", "--n-max", "2", "--output", "spec.csv"])
        .env("QUANTRAP_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("spec.csv").exists());
}

#[test]
fn json_format_emits_an_array_of_objects() {
    let text = run_ok(&["spectrum", "--n-max", "1", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["n"], 1);
    assert_eq!(rows[2]["E"], 4.0);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{ "n_max": 3, "alpha": 0.0 }"#).unwrap();

    let from_cfg = run_ok(&["spectrum", "--config", cfg.to_str().unwrap()]);
    let (_, rows) = parse_csv(&from_cfg);
    assert_eq!(rows.len(), 7);

    let overridden = run_ok(&["spectrum", "--config", cfg.to_str().unwrap(), "--n-max", "1"]);
    let (_, rows) = parse_csv(&overridden);
    assert_eq!(rows.len(), 3);
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn validation_failures_exit_2_with_a_named_precondition() {
    let out = quantrap().args(["calogero", "--gamma", "-0.5"]).output().unwrap();
    assert_eq!(exit_code(&out), 2);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("gamma > -1/4"), "stderr: {msg}");

    let out = quantrap().args(["momentum", "--n", "0"]).output().unwrap();
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 1"));

    let out = quantrap()
        .args(["convergence", "--n", "2", "--v0-list", "1000,100"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("increasing"));

    let out = quantrap().args(["deficiency"]).output().unwrap();
    assert_eq!(exit_code(&out), 2);

    let out = quantrap().args(["no-such-command"]).output().unwrap();
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unwritable_output_exits_3() {
    let out = quantrap()
        .args(["spectrum", "--output", "/definitely/not/a/dir/out.csv"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn convergence_sweep_columns_shrink() {
    let text = run_ok(&["convergence", "--n", "1", "--v0-list", "100,1000,10000"]);
    let (_, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 3);
    let dist: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    assert!(dist[0] > dist[1] && dist[1] > dist[2]);

    assert!(Path::new(env!("CARGO_BIN_EXE_quantrap")).exists());
}
