//! End-to-end tests of the command-line interface: exit codes, output
//! shapes, config precedence and determinism.

use std::process::{Command, Output};

fn catenoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catenoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn profile_writes_catenary_table() {
    let out = catenoid(&[
        "profile", "--family", "euclid", "--n", "2", "--a", "1", "--points", "9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# config-hash: "));
    assert!(text.contains("s,radius,height,d_radius,d_height"));
    // Neck row radius = 1.
    assert!(text.lines().any(|l| l.starts_with("0,1,0,")));
}

#[test]
fn profile_mesh_emits_coordinates() {
    let out = catenoid(&[
        "profile",
        "--family",
        "h3min",
        "--a",
        "0.3",
        "--mesh",
        "--points",
        "3",
        "--theta-samples",
        "4",
        "--s-max",
        "1.0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s,theta,x1,x2,x3"));
    // Half-space model: every x3 positive.
    for line in text.lines().skip(2) {
        let x3: f64 = line.split(',').next_back().unwrap().parse().unwrap();
        assert!(x3 > 0.0);
    }
}

#[test]
fn invalid_neck_is_usage_error() {
    let out = catenoid(&["profile", "--family", "euclid", "--n", "2", "--a=-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn missing_family_is_usage_error() {
    let out = catenoid(&["stability", "--a", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stability_json_fields() {
    let out = catenoid(&["stability", "--family", "h3cousin", "--a", "1.0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lindelof"], serde_json::json!(true));
    assert_eq!(v["index"], serde_json::json!(1));
    assert!(v["config_hash"].is_string());
}

#[test]
fn stability_csv_format() {
    let out = catenoid(&[
        "stability",
        "--family",
        "euclid",
        "--n",
        "3",
        "--a",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("family,a,index,E,z,ell,lindelof"));
    assert!(text.contains("euclid(n=3)"));
    assert!(text.contains("false"));
}

#[test]
fn scan_reports_sign_change_and_is_deterministic() {
    let args = [
        "scan", "--family", "h3min", "--a-min", "0.45", "--a-max", "0.55", "--a-step", "0.05",
    ];
    let first = catenoid(&args);
    assert!(first.status.success());
    let text = stdout(&first);
    assert!(text.contains("a,E0,V0,X0,index"));
    assert!(text.contains("E0 sign change bracketed in [0.45, 0.5]"));
    let second = catenoid(&args);
    assert_eq!(
        first.stdout, second.stdout,
        "scan output must be bit-identical"
    );
}

#[test]
fn scan_empty_range_is_usage_error() {
    let out = catenoid(&[
        "scan", "--family", "h3min", "--a-min", "1.0", "--a-max", "0.5", "--a-step", "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_reports_near_zero_eigenvalue_at_conjugate_interval() {
    let out = catenoid(&[
        "spectrum",
        "--family",
        "euclid",
        "--n",
        "2",
        "--a",
        "1",
        "--interval",
        "-1.199678640257734:1.199678640257734",
        "--grid",
        "2001",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lambda1 = v["lambda1"].as_f64().unwrap();
    assert!(lambda1.abs() < 1e-3, "lambda1 = {lambda1}");
}

#[test]
fn envelope_slope_value() {
    let out = catenoid(&["envelope", "--n", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope - 1.1996786402577338f64 / 1.1996786402577338f64.cosh()).abs() < 1e-9);
}

#[test]
fn flux_domain_balance_comment() {
    let out = catenoid(&[
        "flux", "--family", "euclid", "--n", "3", "--a", "1", "--points", "7", "--s-max", "0.9",
        "--domain", "-0.2:0.9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# balance-residual: "));
    assert!(text.contains("# constant-estimate: 1"));
}

#[test]
fn config_file_supplies_defaults_and_cli_wins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "family=h3min\na=0.2\n").unwrap();
    let from_file = catenoid(&["stability", "--config", path.to_str().unwrap()]);
    assert!(from_file.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(v["a"], serde_json::json!(0.2));

    let overridden = catenoid(&[
        "stability",
        "--config",
        path.to_str().unwrap(),
        "--a",
        "1.0",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_eq!(v["a"], serde_json::json!(1.0));
    assert_eq!(v["index"], serde_json::json!(0));
}

#[test]
fn unknown_config_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "familly=h3min\n").unwrap();
    let out = catenoid(&[
        "stability",
        "--config",
        path.to_str().unwrap(),
        "--a",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn profile_rejects_json_format() {
    let out = catenoid(&[
        "profile", "--family", "euclid", "--n", "2", "--a", "1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jacobi_with_explicit_alpha() {
    let out = catenoid(&[
        "jacobi", "--family", "euclid", "--n", "2", "--a", "1", "--alpha", "0.5",
        "--points", "5", "--s-max", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# alpha: 0.5"));
    assert!(text.contains("s,v,e,w"));
}

#[test]
fn spectrum_half_infinite_with_eigenvector() {
    let dir = tempfile::tempdir().unwrap();
    let evec = dir.path().join("ground.csv");
    let out = catenoid(&[
        "spectrum", "--family", "h2xr", "--a", "0.5", "--interval", "-inf:inf",
        "--grid", "801", "--eigenvector", evec.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["truncation"].as_f64().unwrap() > 0.0);
    // Index 1: the whole catenoid is unstable with one negative direction.
    assert_eq!(v["index"], serde_json::json!(1));
    let table = std::fs::read_to_string(&evec).unwrap();
    assert!(table.contains("s,f"));
    // Ground state positive after sign normalization.
    let mut min_f = f64::INFINITY;
    for line in table.lines().skip(2) {
        let f: f64 = line.split(',').next_back().unwrap().parse().unwrap();
        min_f = min_f.min(f);
    }
    assert!(min_f > -1e-9, "ground state changes sign: min {min_f}");
}

#[test]
fn verify_filter_subset_passes() {
    let out = catenoid(&["verify", "--filter", "xi0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[PASS]  1."));
    assert!(text.contains("1/1 criteria passed"));
}

#[test]
fn verify_absurd_tolerance_fails_with_code_one() {
    let out = catenoid(&["verify", "--filter", "v-height", "--tol-scale", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = catenoid(&[
        "profile",
        "--family",
        "h2xr",
        "--a",
        "0.5",
        "--points",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# config-hash: "));
}
