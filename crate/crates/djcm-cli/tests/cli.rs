//! Black-box checks of the binary: flag/file precedence, error paths, and
//! the shape of each output format.

use std::process::Command;

fn djcm(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_djcm")).args(args).output().unwrap()
}

#[test]
fn config_file_fills_in_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "gA=2.0\ngB=3.0\nna=3\nnb=0\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = djcm(&["spectrum", "--config", cfg]);
    assert!(from_file.status.success());
    let text = String::from_utf8(from_file.stdout).unwrap();
    // Omega_A = 2 sqrt(4) = 4, Omega_B = 3: top eigenvalue 3.5
    assert!(text.contains("3.5"), "unexpected spectrum: {text}");

    let overridden = djcm(&["spectrum", "--config", cfg, "--gB", "0.0"]);
    assert!(overridden.status.success());
    let text = String::from_utf8(overridden.stdout).unwrap();
    // flag beats file: Omega_B = 0 so the top eigenvalue drops to 2
    assert!(text.contains(",2.") && !text.contains("3.5"), "flag did not win: {text}");
}

#[test]
fn invalid_inputs_are_rejected() {
    for args in [
        &["spectrum", "--wA", "-1"][..],
        &["rabi", "--delta", "0.5"][..],
        &["revival", "--alpha-sq", "20", "--cutoff", "5"][..],
        &["rabi", "--scenario", "III"][..],
    ] {
        let out = djcm(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
    }
}

#[test]
fn rabi_csv_shape() {
    let out = djcm(&["rabi", "--theta", "0", "--samples", "3", "--tmax", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# "));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "t,W_A_paper,W_B_paper,W_A_exact,W_B_exact");
    assert_eq!(data.len(), 1 + 3);
    assert_eq!(data[1].split(',').count(), 5);
}

#[test]
fn revival_json_has_summary_and_series() {
    let out = djcm(&[
        "revival", "--alpha-sq", "4", "--cutoff", "30", "--samples", "500", "--tmax", "20",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["summary"]["t_revival_pred"].is_number());
    assert_eq!(v["summary"]["weighting"], "twin");
    assert_eq!(v["series"]["t"].as_array().unwrap().len(), 500);
    for col in ["w_a_paper", "w_b_paper", "w_a_exact", "w_b_exact"] {
        assert_eq!(v["series"][col].as_array().unwrap().len(), 500);
    }
}

#[test]
fn verify_reports_all_checks_and_exits_zero() {
    let out = djcm(&["verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows.len() > 10);
    assert!(rows.iter().skip(1).all(|r| r.ends_with(",pass") || r.ends_with(",informational")));
}
