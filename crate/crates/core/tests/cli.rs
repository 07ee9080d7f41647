use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hetnet-handover"))
}

#[test]
fn analyze_sigma_sweep_writes_monotone_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sigma.toml");
    std::fs::write(&cfg, "[sweep]\naxis = \"sigma\"\nvalues = [50.0, 100.0, 150.0, 200.0]\n").unwrap();
    let out = bin().args(["analyze", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# schema_version=1");
    assert_eq!(lines[1], "pair,lambda_s,sigma,V_mps,T_s,Tp_s,H_t,H,H_f,H_p");
    let h: Vec<f64> = lines[2..].iter().map(|l| l.split(',').nth(7).unwrap().parse().unwrap()).collect();
    assert_eq!(h.len(), 4);
    assert!(h.windows(2).all(|w| w[1] > w[0]), "{h:?}");
}

#[test]
fn threshold_sweep_raises_failure_rate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("t.toml");
    std::fs::write(&cfg, "[sweep]\naxis = \"T\"\nvalues = [0.5, 1.0, 2.0, 4.0]\n").unwrap();
    let out = bin().args(["analyze", "--config"]).arg(&cfg).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let hf: Vec<f64> = text.lines().skip(2).map(|l| l.split(',').nth(8).unwrap().parse().unwrap()).collect();
    assert!(hf.windows(2).all(|w| w[1] > w[0]), "{hf:?}");
}

#[test]
fn errors_exit_nonzero() {
    let out = bin().args(["analyze", "--config", "/definitely/missing.toml"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.toml"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sm.toml");
    // The default macro tier is stronger than the small cells, so the
    // small-to-macro boundary encloses the serving cell.
    std::fs::write(&cfg, "pair = \"SM\"\n").unwrap();
    let out = bin().args(["analyze", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn validate_emits_comparison_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("v.toml");
    let csv = dir.path().join("v.csv");
    std::fs::write(&cfg, "[simulation]\nn_users = 10\nn_moves = 20\nn_trials = 3\n").unwrap();
    let out = bin().args(["validate", "--config"]).arg(&cfg).arg("--out").arg(&csv).output().unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 2 + 12);
    assert!(String::from_utf8_lossy(&out.stderr).contains("S'S"));
}

#[test]
fn fixtures_subcommand_matches_committed_file() {
    let out = bin().arg("fixtures").output().unwrap();
    assert!(out.status.success());
    let committed = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/derived.toml")).unwrap();
    let fresh = String::from_utf8(out.stdout).unwrap();
    let names = |s: &str| s.lines().filter(|l| l.starts_with("name")).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(names(&fresh), names(&committed));
}
