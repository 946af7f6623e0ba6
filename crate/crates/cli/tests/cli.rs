//! End-to-end tests of the `trapbec` binary: exit codes, output formats,
//! determinism, config-file override semantics.

use std::process::{Command, Output};

fn trapbec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trapbec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn f(cell: &str) -> f64 {
    cell.parse().unwrap()
}

#[test]
fn energy_noninteracting_is_three_halves() {
    let o = trapbec(&["energy", "--model", "local", "--bN", "0", "--sigma", "1", "--no-header"]);
    assert!(o.status.success());
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 1);
    // columns: sigma,n,e_kin,e_trap,e_int,e_total,virial
    assert!((f(&rows[0][5]) - 1.5).abs() < 1e-15);
}

#[test]
fn energy_matches_pinned_oracle_value() {
    let o = trapbec(&["energy", "--model", "local", "--bN", "1", "--sigma", "0.5", "--no-header"]);
    assert!(o.status.success());
    let total = f(&data_rows(&o)[0][5]);
    assert!((total - 3.441_474_543_736_963_9).abs() < 1e-14, "{total}");
}

#[test]
fn energy_rejects_nonpositive_sigma_with_exit_2() {
    let o = trapbec(&["energy", "--sigma", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--sigma"), "stderr: {err}");
}

#[test]
fn branch_counts_one_two_three() {
    let o = trapbec(&["branches", "--b", "1", "--N", "10", "--no-header"]);
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][6], "minimum");
    assert_eq!(rows[0][7], "stable");

    // half the critical number for b = -1
    let o = trapbec(&["branches", "--b", "-1", "--N", "4.2129595833448402", "--no-header"]);
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][6], "maximum");
    assert_eq!(rows[1][6], "minimum");

    let o = trapbec(&[
        "branches", "--model", "nonlocal", "--b", "-0.01", "--A", "2", "--Gamma", "8", "--N", "20",
        "--sigma-min", "0.02", "--sigma-max", "10", "--no-header",
    ]);
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][6], "minimum");
    assert_eq!(rows[1][6], "maximum");
    assert_eq!(rows[2][6], "minimum");
}

#[test]
fn critical_local_reports_both_constants() {
    let o = trapbec(&["critical", "--a-s", "-1", "--no-header"]);
    assert!(o.status.success());
    let rows = data_rows(&o);
    assert!((f(&rows[0][0]) - 0.668_740_304_976_422_1).abs() < 1e-12);
    assert!((f(&rows[0][2]) - 0.670_513_342_735_703_1).abs() < 1e-9);
}

#[test]
fn critical_nonlocal_with_zero_a_matches_local() {
    let local = trapbec(&["critical", "--b", "-1", "--no-header"]);
    let nonlocal = trapbec(&[
        "critical", "--model", "nonlocal", "--b", "-1", "--A", "0", "--no-header",
    ]);
    let l = data_rows(&local);
    let n = data_rows(&nonlocal);
    assert!((f(&l[0][0]) - f(&n[0][0])).abs() < 1e-8);
    assert!((f(&l[0][1]) - f(&n[0][1])).abs() < 1e-7 * f(&l[0][1]));
}

#[test]
fn critical_rejects_repulsive_with_exit_2() {
    let o = trapbec(&["critical", "--b", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_bodies_are_byte_identical() {
    let args = [
        "sweep", "--b", "-1", "--sigma-min", "0.2", "--sigma-max", "1.0", "--steps", "40",
        "--no-header",
    ];
    let a = trapbec(&args);
    let b = trapbec(&args);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);

    let json_args = [
        "sweep", "--b", "-1", "--sigma-min", "0.2", "--sigma-max", "1.0", "--steps", "40",
        "--no-header", "--format", "json",
    ];
    let a = trapbec(&json_args);
    let b = trapbec(&json_args);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["data"].as_array().unwrap().len(), 40);
}

#[test]
fn sweep_rejects_empty_range_with_exit_2() {
    let o = trapbec(&["sweep", "--b", "1", "--sigma-min", "2", "--sigma-max", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn header_echoes_effective_config() {
    let o = trapbec(&["energy", "--b", "0.5", "--N", "3", "--sigma", "1.2"]);
    let text = stdout(&o);
    assert!(text.contains("# command: energy"));
    assert!(text.contains("# B: 0.5"));
    assert!(text.contains("# N: 3.0"));
    assert!(text.contains("# generated:"));
}

#[test]
fn config_file_supplies_params_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.json");
    std::fs::write(
        &path,
        r#"{"a_s": 0.0, "kernel": {"type": "composite", "B": -0.01, "A": 2.0, "Gamma": 8.0}, "units": "oscillator"}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let o = trapbec(&[
        "branches", "--model", "nonlocal", "--config", p, "--N", "20",
        "--sigma-min", "0.02", "--sigma-max", "10", "--no-header",
    ]);
    assert_eq!(data_rows(&o).len(), 3, "witness params from file");

    // flag override: dropping the screened amplitude leaves only the
    // weak-contact minimum inside the window (the collapse barrier sits
    // below sigma = 0.02)
    let o = trapbec(&[
        "branches", "--model", "nonlocal", "--config", p, "--A", "0", "--N", "20",
        "--sigma-min", "0.02", "--sigma-max", "10", "--no-header",
    ]);
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 1, "flag overrides file");
    assert_eq!(rows[0][6], "minimum");
}

#[test]
fn si_units_reduce_to_oscillator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("si.json");
    // a_s = -0.05 a_ho with a_ho = sqrt(hbar/(m omega))
    std::fs::write(
        &path,
        r#"{"mass": 1.443e-25, "omega": 628.3185307179587, "hbar": 1.0545718e-34,
            "a_s": -1.7025593284564673e-7, "units": "si"}"#,
    )
    .unwrap();
    let o = trapbec(&[
        "critical", "--config", path.to_str().unwrap(), "--no-header",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&o);
    assert!((f(&rows[0][0]) - 0.668_740_304_976_422_1).abs() < 1e-10);
    // N_max |a_s| / a_ho is unit free
    assert!((f(&rows[0][2]) - 0.670_513_342_735_703_1).abs() < 1e-6);
}

#[test]
fn gpe_noninteracting_report() {
    let o = trapbec(&["gpe", "--bN", "0", "--no-header"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&o);
    // columns: bn,e_kin,e_trap,e_int,e_total,mu,virial_residual,...
    assert!((f(&rows[0][4]) - 1.5).abs() < 1e-7);
    assert!((f(&rows[0][5]) - 1.5).abs() < 1e-7);
    assert!(f(&rows[0][6]) < 1e-8);
    assert_eq!(rows[0][10], "pass");
}

#[test]
fn gpe_writes_profile_and_history() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("profile.csv");
    let history = dir.path().join("history.csv");
    let o = trapbec(&[
        "gpe", "--bN", "1", "--grid-points", "256", "--no-header",
        "--profile-out", profile.to_str().unwrap(),
        "--history-out", history.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let p = std::fs::read_to_string(profile).unwrap();
    assert!(p.starts_with("r,psi,u\n"));
    assert_eq!(p.lines().count(), 258); // header + 257 nodes
    let h = std::fs::read_to_string(history).unwrap();
    assert!(h.starts_with("iter,energy,residual\n"));
    assert!(h.lines().count() > 2);
}

#[test]
fn gpe_collapse_exits_3() {
    let o = trapbec(&["gpe", "--bN", "-17", "--grid-points", "256"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("collapse"), "stderr: {err}");
}

#[test]
fn gpe_nonconvergence_exits_4() {
    let o = trapbec(&["gpe", "--bN", "20", "--grid-points", "256", "--max-iters", "100"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn gpe_rejects_nonlocal_model_with_exit_2() {
    let o = trapbec(&["gpe", "--model", "nonlocal", "--b", "-0.01", "--A", "2", "--Gamma", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_absurd_tolerance_exits_5() {
    let o = trapbec(&["validate", "--energy-tol", "1e-16", "--n-tol", "1e-16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(5));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["config"]["all_pass"], serde_json::Value::Bool(false));
}
