//! End-to-end tests of the `sicnet` binary: flag handling, CSV schema,
//! config-file runs, error behavior.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sicnet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("sicnet-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn pk_single_point_schema() {
    let out = run(&[
        "pk", "--beta", "0.5", "--theta", "1.0", "--k-max", "1", "--replicates", "400",
        "--n-points", "100", "--seed", "9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("theta,mc_p1,mc_p1_se,hr_lb_k1,hr_lb_k1_flag"));
    assert_eq!(lines.count(), 1);
    // LF endings, no CR.
    assert!(!text.contains('\r'));
}

#[test]
fn throughput_sweep_and_out_file() {
    let path = tmp("throughput.csv");
    let out = run(&[
        "throughput", "--beta", "0.5", "--sweep", "theta_db:-5:5:3", "--replicates", "300",
        "--n-points", "100", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn validation_failure_is_nonzero_and_leaves_no_file() {
    let path = tmp("never.csv");
    let out = run(&[
        "pk", "--beta", "1.5", "--theta", "1.0", "--replicates", "300",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(!Path::new(&path).exists());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("beta"), "stderr: {err}");
}

#[test]
fn missing_subcommand_fails() {
    let out = run(&[]);
    assert!(!out.status.success());
}

#[test]
fn unknown_preset_fails() {
    let out = run(&["figure", "fig99"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown preset"));
}

#[test]
fn config_file_run() {
    let cfg_path = tmp("spec.json");
    std::fs::write(
        &cfg_path,
        r#"{
            "sweep": {"var": "theta_db", "start": -5, "stop": 5, "count": 3},
            "fixed": {"beta": 0.5},
            "quantities": [
                {"quantity": "mc_en"},
                {"quantity": "bound", "name": "en_lb"}
            ],
            "replicates": 300,
            "n_points": 100,
            "master_seed": 2
        }"#,
    )
    .unwrap();
    let out = run(&["--config", cfg_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("theta_db,mc_en,mc_en_se,en_lb,en_lb_flag"));
    assert_eq!(text.lines().count(), 4);

    // --config conflicts with a subcommand.
    let both = run(&["--config", cfg_path.to_str().unwrap(), "en", "--beta", "0.5"]);
    assert!(!both.status.success());
    std::fs::remove_file(&cfg_path).ok();
}

#[test]
fn config_rejects_invalid_json_with_message() {
    let cfg_path = tmp("bad.json");
    std::fs::write(&cfg_path, "{\"sweep\": {}}").unwrap();
    let out = run(&["--config", cfg_path.to_str().unwrap()]);
    assert!(!out.status.success());
    std::fs::remove_file(&cfg_path).ok();
}

#[test]
fn hcn_layers_parse() {
    let out = run(&[
        "hcn", "--beta", "0.5", "--eta", "0.6", "--theta-db", "0", "--layers", "inf,1,2",
        "--replicates", "400", "--n-points", "150",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert!(header.contains("mc_pc_inf"));
    assert!(header.contains("mc_pc1"));
    assert!(header.contains("mc_pc2"));
    assert!(header.contains("hcn_pc_no_sic"));

    let bad = run(&["hcn", "--beta", "0.5", "--eta", "0.6", "--layers", "zero"]);
    assert!(!bad.status.success());
}

#[test]
fn laplace_matches_formula_column() {
    let out = run(&[
        "laplace", "--beta", "0.5", "--theta", "1.0", "--k", "1", "--replicates", "3000",
        "--n-points", "300", "--seed", "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let mc: f64 = row[1].parse().unwrap();
    let se: f64 = row[2].parse().unwrap();
    let formula: f64 = row[3].parse().unwrap();
    assert!((mc - formula).abs() < 4.0 * se, "mc {mc} vs formula {formula}");
}

#[test]
fn workers_flag_does_not_change_results() {
    let args = |workers: &str| {
        vec![
            "en".to_string(), "--beta".into(), "0.5".into(), "--theta".into(), "1.0".into(),
            "--replicates".into(), "2000".into(), "--n-points".into(), "200".into(),
            "--seed".into(), "3".into(), "--workers".into(), workers.to_string(),
        ]
    };
    let a = bin().args(args("1")).output().unwrap();
    let b = bin().args(args("4")).output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
