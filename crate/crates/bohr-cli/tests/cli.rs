use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bohr(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .env("BOHR_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn xi_table_is_written_under_command_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(dir.path(), &["xi", "--p", "1,2", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("xi-9.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("p,xi_p,tol"));
    assert!(csv.contains("\n1,0.5,1e-12\n"), "{csv}");
    assert!(csv.contains("\n2,1,1e-12\n"), "{csv}");
}

#[test]
fn out_dir_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = bohr(
        env_dir.path(),
        &["lq-witness", "--out-dir", flag_dir.path().to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(flag_dir.path().join("lq-witness-0.csv").exists());
    assert!(!env_dir.path().join("lq-witness-0.csv").exists());
}

#[test]
fn rstar_precondition_is_reported_with_usage_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(dir.path(), &["rstar", "--p", "2", "--N", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p=2, N=1"));
    let csv = fs::read_to_string(dir.path().join("rstar-0.csv")).unwrap();
    assert!(csv.contains("2,1,1,,xi_not_below_N"), "{csv}");
    assert!(csv.contains("2,2,1,0.786151377757"), "{csv}");
}

#[test]
fn invalid_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(dir.path(), &["verify", "bohr", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--samples"));

    let out = bohr(dir.path(), &["verify", "bohr", "--r", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--r"));

    let out = bohr(dir.path(), &["verify", "abel", "--family", "mobius"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--family"));

    let out = bohr(dir.path(), &["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn failing_sweep_exits_one_and_still_writes_the_report() {
    // With zero slack, roundoff-level negative margins count as violations.
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(
        dir.path(),
        &[
            "verify",
            "majorant",
            "--D",
            "8",
            "--samples",
            "50",
            "--slack",
            "0",
        ],
    );
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("verify-majorant-0.csv")).unwrap();
    assert!(csv.contains(",fail\n"), "{csv}");

    let out = bohr(
        dir.path(),
        &["verify", "majorant", "--D", "8", "--samples", "50"],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_report_carries_witnesses_and_mode() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(
        dir.path(),
        &[
            "verify",
            "parseval",
            "--d",
            "2",
            "--D",
            "4",
            "--samples",
            "30",
            "--N",
            "2",
            "--t-grid",
            "16",
            "--output",
            "json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("verify-parseval-0.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row = &v["rows"][0];
    assert_eq!(row["inequality_id"], "parseval");
    assert_eq!(row["details"]["mode"], "report");
    assert!(row["details"]["violations"].is_array());
    assert!(row["status"] == "pass" || row["status"] == "finding");
}

#[test]
fn closed_form_refined_case_is_an_equality() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(
        dir.path(),
        &[
            "verify",
            "refined",
            "--alpha",
            "0.5",
            "--psi",
            "z",
            "--r",
            "0.3333333",
            "--output",
            "json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("verify-refined-0.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let margin = v["rows"][0]["min_margin"].as_f64().unwrap();
    assert!(margin.abs() <= 1e-8, "{margin}");
    assert!((v["rows"][0]["details"]["values"]["lhs"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
}

#[test]
fn common_phase_chain_is_degenerate_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(
        dir.path(),
        &[
            "chains",
            "--N",
            "2",
            "--samples",
            "100",
            "--phase-convention",
            "common-phase",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("chains-0.csv")).unwrap();
    assert!(
        csv.lines().skip(1).all(|l| l.ends_with(",degenerate")),
        "{csv}"
    );
}

#[test]
fn lq_space_convexity_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = bohr(
        dir.path(),
        &[
            "convexity",
            "--q",
            "2",
            "--d",
            "3",
            "--N",
            "1",
            "--samples",
            "50",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("convexity-0.csv")).unwrap();
    assert!(csv.contains("l_2^3,power_phase"), "{csv}");

    let out = bohr(dir.path(), &["convexity", "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}
