use std::process::{Command, Output};

use umbral_cli::table::Table;
use umbral_core::mixed::{cp_oracle, MixedParams};

fn umbral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbral"))
        .args(args)
        .env_remove(umbral_cli::ORDER_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_examples() {
    let o = umbral(&["table", "--family", "cp", "--k", "1", "--lambda", "1", "--mu", "1", "--n", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/2\n0, -1/2\n");
    let o = umbral(&["table", "--family", "peters", "--lambda", "1", "--mu", "1", "--n", "1"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("-1/4, 1/2"));
    let o = umbral(&["table", "--family", "falling", "--n", "2"]);
    assert_eq!(stdout(&o).lines().nth(2), Some("0, -1, 1"));
}

#[test]
fn table_json_round_trip() {
    let o = umbral(&["table", "--family", "cp", "--k", "-2", "--lambda", "-1/2", "--mu", "3", "--n", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let table: Table = stdout(&o).parse().unwrap();
    let params = MixedParams::new(-2, "-1/2".parse().unwrap(), 3);
    assert_eq!(table.polynomials, cp_oracle(&params, 6).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["table", "--family", "cp", "--lambda", "1", "--mu", "1"],
        vec!["table", "--family", "nonsense"],
        vec!["table", "--family", "frobenius-euler", "--s", "1", "--lambda", "1"],
        vec!["verify", "--identities", "T99"],
        vec!["verify", "--identities", "T8", "--n-max", "0"],
        vec!["verify"],
        vec!["verify", "--identities", "T1", "--grid", "/nonexistent/grid.json"],
        vec!["bogus"],
    ] {
        assert_eq!(umbral(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn invalid_order_env_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_umbral"))
        .args(["verify", "--identities", "T1", "--n-max", "1"])
        .env(umbral_cli::ORDER_ENV, "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let o = umbral(&["verify", "--identities", "T7", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["identities"][0]["status"], "verified");
    assert_eq!(report["success"], true);

    let o = umbral(&["verify", "--identities", "T1", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errata_resolution_keeps_exit_0() {
    // the printed form fails and keeps its witness, the correction verifies
    let o = umbral(&["verify", "--identities", "R54", "--n-max", "3", "--k", "2", "--lambda", "1/2", "--mu", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["identities"][0]["status"], "errata-resolved");
    assert!(report["identities"][0]["printed"]["first_fail"].is_object());
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let o = umbral(&["verify", "--identities", "T1,ADD56,R43,T11", "--n-max", "4", "--output", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    // flag order does not matter either
    let o = umbral(&["verify", "--identities", "T11,R43,ADD56,T1", "--n-max", "4"]);
    assert_eq!(o.stdout, a);
}

#[test]
fn grid_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    std::fs::write(&grid, r#"{"k": [1], "lambda": ["2"], "mu": [1, 2], "n_max": 3}"#).unwrap();
    let o = umbral(&["verify", "--identities", "T2", "--grid", grid.to_str().unwrap(), "--mu", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["grid"]["mu"], serde_json::json!([0]));
    assert_eq!(report["grid"]["n_max"], 3);
    assert_eq!(report["identities"][0]["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn errata_document() {
    let o = umbral(&["errata", "--k", "2", "--lambda", "1/2,2", "--mu", "1,3", "--s", "1", "--y", "1/2", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for needle in ["R43", "R54", "R9", "T10", "B_l^(m)", "B_l^(n)"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn export_writes_every_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    let o = umbral(&[
        "export", "--k", "1", "--lambda", "1,-1/2", "--mu", "2", "--s", "1", "--n-max", "3", "--format", "csv", "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let index: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("index.json")).unwrap()).unwrap();
    let entries = index.as_array().unwrap();
    // cp, cphat, peters, boole per lambda; two poly-Cauchy; three order-s families;
    // frobenius-euler at lambda != 1; changhee, falling, rising
    assert_eq!(entries.len(), 2 * 4 + 2 + 3 + 1 + 3);
    for e in entries {
        assert!(out.join(e["file"].as_str().unwrap()).exists());
    }
    let cp = std::fs::read_to_string(out.join("cp_k1_lambdam1_2_mu2.csv")).unwrap();
    assert!(cp.starts_with("n,x^0,x^1,x^2,x^3\n"));
}
