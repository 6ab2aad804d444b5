use std::process::{Command, Output};

use mdpv::cli::{catalog_json, EXIT_BLOWUP, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, EXIT_VALIDITY};

fn mdpv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdpv"))
        .args(args)
        .env_remove("MDPV_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    mdpv(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(mdpv(args).stdout).unwrap()
}

#[test]
fn list_shows_every_family() {
    let text = stdout(&["list"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 23);
    let u11 = rows.iter().find(|r| r.starts_with("u11 ")).unwrap();
    assert!(u11.trim_end().ends_with("-b - 1"), "{u11}");
}

#[test]
fn list_json_matches_the_committed_catalog() {
    let text = stdout(&["list", "--json"]);
    assert_eq!(text, catalog_json());
    let committed = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog.json")).unwrap();
    assert_eq!(committed, text);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    for entry in parsed.as_array().unwrap() {
        for key in ["id", "method", "speed", "params", "constraints"] {
            assert!(entry.get(key).is_some(), "{key} missing");
        }
    }
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "--family", "u3", "--b", "3"]), EXIT_OK);
    assert_eq!(code(&["verify", "--family", "all", "--b", "0.5", "--seed", "7"]), EXIT_OK);
    assert_eq!(code(&["verify", "--family", "u3", "--b", "-1"]), EXIT_VALIDITY);
    assert_eq!(code(&["verify", "--family", "u1", "--b", "1", "--param", "mu=1.3"]), EXIT_VALIDITY);
    assert_eq!(code(&["verify", "--family", "u3", "--b", "3", "--equation", "dp"]), EXIT_FAILURE);
    assert_eq!(code(&["verify", "--expr", "x", "--b", "3"]), EXIT_FAILURE);
    assert_eq!(code(&["verify", "--family", "u99"]), EXIT_USAGE);
    assert_eq!(code(&["verify", "--family", "u3", "--n", "abc"]), EXIT_USAGE);
}

#[test]
fn verify_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let args = ["verify", "--family", "u12", "--b", "1", "--draws", "3", "--seed", "9", "--json", p];
    assert_eq!(code(&args), EXIT_OK);
    let first = std::fs::read(&path).unwrap();
    assert_eq!(code(&args), EXIT_OK);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["manifest"]["seed"], 9);
    let row = &v["results"][0];
    for key in ["family", "b", "params", "window", "n", "max_abs_residual", "points_evaluated", "points_excluded", "tolerance", "scale", "pass"] {
        assert!(row.get(key).is_some(), "{key} missing");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_mdpv"))
        .args(["verify", "--family", "u1", "--b", "0", "--json", path.to_str().unwrap()])
        .env("MDPV_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["manifest"]["seed"], 123);
}

#[test]
fn riccati_audit_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.json");
    let out = mdpv(&["riccati-audit", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let failing: Vec<&str> = rows
        .iter()
        .filter(|r| r["printed_passes"] == false)
        .map(|r| r["case"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["4b", "4d", "7"]);
    assert!(rows.iter().all(|r| r["corrected_passes"] == true));
    assert!(rows.iter().all(|r| r.get("max_residual_corrected").is_some()));
}

#[test]
fn system_verify_exit_codes() {
    assert_eq!(code(&["system-verify", "--method", "colehopf", "--family", "u1"]), EXIT_OK);
    assert_eq!(code(&["system-verify", "--method", "tanhcoth", "--family", "u20"]), EXIT_OK);
    assert_eq!(code(&["system-verify", "--method", "hyperbolic", "--family", "u7"]), EXIT_OK);
    assert_eq!(
        code(&["system-verify", "--method", "tanhcoth", "--family", "u20", "--perturb", "a0=1e-3"]),
        EXIT_FAILURE
    );
    assert_eq!(code(&["system-verify", "--method", "tanhcoth", "--family", "u1"]), EXIT_USAGE);
    assert_eq!(
        code(&["system-verify", "--method", "tanhcoth", "--family", "u20", "--perturb", "zz=1"]),
        EXIT_USAGE
    );
}

#[test]
fn system_dump_lists_powers_and_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dump.json");
    let args = ["system-verify", "--method", "colehopf", "--family", "u2", "--draws", "1", "--dump", path.to_str().unwrap()];
    assert_eq!(code(&args), EXIT_OK);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert!(entries.iter().all(|e| e["power"].is_i64() && e["coefficient_formatted"].is_string()));
}

#[test]
fn simulate_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let json = dir.path().join("s.json");
    let args = [
        "simulate", "--family", "u6", "--b", "3", "--N", "256", "--T", "0.5", "--output-every", "500",
        "--csv", csv.to_str().unwrap(), "--json", json.to_str().unwrap(),
    ];
    assert_eq!(code(&args), EXIT_OK);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,u_numeric,u_exact,error"));
    assert_eq!(lines.count(), 3 * 256);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    for key in ["family", "b", "N", "L", "dt", "T", "linf_error", "mass_drift", "measured_speed", "expected_speed", "manifest"] {
        assert!(v.get(key).is_some(), "{key} missing");
    }
    assert!(v["linf_error"].as_f64().unwrap() < 1e-3);
}

#[test]
fn simulate_exit_codes() {
    assert_eq!(code(&["simulate", "--family", "u5"]), EXIT_VALIDITY);
    assert_eq!(code(&["simulate", "--N", "100"]), EXIT_USAGE);
    assert_eq!(code(&["simulate", "--dt", "0.1", "--T", "0.2"]), EXIT_VALIDITY);
    assert_eq!(code(&["simulate", "--dt", "0.1", "--T", "2", "--skip-cfl"]), EXIT_BLOWUP);
}
