//! End-to-end tests of the `frustrant` binary: output contents, exit codes,
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn frustrant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frustrant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("frustrant-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn ggm_ising_gas_row() {
    let output = frustrant(&["ggm", "--model", "ising-gas", "--m", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "model,n,ggm_numeric,ggm_analytic,dominant_cut_size,wall_time_ms"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "ising-gas");
    assert_eq!(row[1], "6");
    let numeric: f64 = row[2].parse().unwrap();
    let analytic: f64 = row[3].parse().unwrap();
    assert!((numeric - 0.4).abs() < 1e-10);
    assert!((analytic - 0.4).abs() < 1e-10);
    assert_eq!(row[4], "2");
    assert_eq!(row[5], "0");
}

#[test]
fn ggm_ss_dimer_product_is_zero() {
    let output = frustrant(&["ggm", "--model", "ss", "--pairs", "0:3,1:2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let row = text.lines().nth(1).unwrap();
    let numeric: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert_eq!(numeric, 0.0);
}

#[test]
fn ggm_mg_quoted_point() {
    let output = frustrant(&["ggm", "--model", "mg", "--m", "4", "--alpha-re", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let numeric: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((numeric - 1.0 / 3.0).abs() < 1e-10);
}

#[test]
fn ggm_missing_m_is_usage_error() {
    let output = frustrant(&["ggm", "--model", "ising-gas"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn ggm_restricted_flag_only_for_plaquette() {
    let output = frustrant(&["ggm", "--model", "rvb", "--m", "2", "--restricted"]);
    assert_eq!(output.status.code(), Some(2));
    let output = frustrant(&[
        "ggm",
        "--model",
        "plaquette",
        "--plaquettes",
        "2",
        "--restricted",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let numeric: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((numeric - 0.1).abs() < 5e-3);
}

#[test]
fn sweep_is_deterministic_and_monotone_for_gas() {
    let args = [
        "sweep",
        "--model",
        "ising-gas",
        "--m-min",
        "2",
        "--m-max",
        "5",
    ];
    let first = frustrant(&args);
    let second = frustrant(&args);
    assert!(first.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "sweep output must be byte-identical"
    );
    let text = stdout(&first);
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|row| row.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 4);
    for pair in values.windows(2) {
        assert!(pair[0] < pair[1], "gas sweep must increase: {values:?}");
    }
}

#[test]
fn sweep_rvb_curve_increases_from_the_two_spin_point() {
    let output = frustrant(&["sweep", "--model", "rvb", "--m-min", "1", "--m-max", "4"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|row| row.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values[0], 0.0);
    for pair in values.windows(2) {
        assert!(pair[0] < pair[1], "rvb sweep must increase: {values:?}");
    }
}

#[test]
fn sweep_writes_file() {
    let path = temp_path("sweep.csv");
    let output = frustrant(&[
        "sweep",
        "--model",
        "mg",
        "--m-min",
        "2",
        "--m-max",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("model,n,"));
    assert_eq!(text.lines().count(), 4);
    // mg at alpha=1 approaches 3/8 from below
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|row| row.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!((values[0] - 0.25).abs() < 1e-10);
    for pair in values.windows(2) {
        assert!(pair[0] < pair[1]);
    }
}

#[test]
fn frustration_triangle_file() {
    let path = temp_path("triangle.ham");
    std::fs::write(
        &path,
        "# AFM triangle\nheis 1 0 1\nheis 1 1 2\nheis 1 2 0\n",
    )
    .unwrap();
    let output = frustrant(&["frustration", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(json["degree"], 0.5);
    assert_eq!(json["degree_exact"], "1/2");
    assert_eq!(json["degeneracy"], 6);
}

#[test]
fn frustration_square_ring_file() {
    let path = temp_path("square.ham");
    std::fs::write(
        &path,
        "term 1 0:z 1:z\nterm 1 1:z 2:z\nterm 1 2:z 3:z\nterm 1 3:z 0:z\n",
    )
    .unwrap();
    let output = frustrant(&["frustration", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(json["degree"], 0.0);
    assert_eq!(json["degeneracy"], 2);
}

#[test]
fn frustration_ising_ring_model() {
    let output = frustrant(&["frustration", "--model", "ising-ring", "--m", "3"]);
    assert!(output.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(json["degree"], 0.2);
    assert_eq!(json["degree_exact"], "1/5");
    assert_eq!(json["degeneracy"], 12);
}

#[test]
fn frustration_degenerate_denominator_exits_4() {
    let path = temp_path("degenerate.ham");
    // The two couplings cancel, leaving no interaction terms: every
    // configuration is a ground state with an empty negative part.
    std::fs::write(&path, "term 1 0:z 1:z\nterm -1 0:z 1:z\n").unwrap();
    let output = frustrant(&["frustration", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn frustration_resource_cap_exits_3() {
    let output = frustrant(&["frustration", "--model", "ising-gas", "--m", "30"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn verify_gas_scope_passes() {
    let output = frustrant(&["verify", "--scope", "gas", "--max-m", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("ising-gas: pass"));
}

#[test]
fn verify_ring_scope_reports_known_failure() {
    let output = frustrant(&["verify", "--scope", "ring", "--max-m", "2"]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(text.contains("FAIL ising-ring: m=2 full-scan ggm"));
    assert!(text.contains("pass ising-ring: m=2 2:2m-2 restricted ggm"));
}

#[test]
fn verify_unknown_scope_is_usage_error() {
    let output = frustrant(&["verify", "--scope", "bogus"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn state_dump_load_round_trip() {
    let path = temp_path("state.txt");
    let dump = frustrant(&[
        "state",
        "dump",
        "--model",
        "rvb",
        "--m",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(dump.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("N=4\n"));
    assert_eq!(text.lines().count(), 7); // header + 6 amplitudes

    let load = frustrant(&["state", "load", "--input", path.to_str().unwrap(), "--ggm"]);
    std::fs::remove_file(&path).ok();
    assert!(load.status.success());
    let loaded = stdout(&load);
    assert!(loaded.starts_with("N=4 terms=6 norm=1.00000000000e0"));
    let row = loaded.lines().last().unwrap();
    assert!(row.starts_with("loaded,4,"));
    let numeric: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((numeric - 0.25).abs() < 1e-10);
}

#[test]
fn thread_env_does_not_change_output() {
    let baseline = frustrant(&[
        "sweep",
        "--model",
        "ising-ring",
        "--m-min",
        "2",
        "--m-max",
        "4",
    ]);
    let single = Command::new(env!("CARGO_BIN_EXE_frustrant"))
        .args([
            "sweep",
            "--model",
            "ising-ring",
            "--m-min",
            "2",
            "--m-max",
            "4",
        ])
        .env("FRUSTRANT_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(baseline.status.success());
    assert!(single.status.success());
    assert_eq!(baseline.stdout, single.stdout);
}
