use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lfadjoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfadjoint"))
        .args(args)
        .env_remove("LFADJOINT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = lfadjoint(args);
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)));
    (code, json)
}

#[test]
fn weights_csv_for_type_c() {
    let out = lfadjoint(&["weights", "--alpha", "-2", "--trunc", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,beta");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"4,2.0"));
}

#[test]
fn exact_identity_for_hardy_space() {
    let (code, r) = report(&[
        "verify", "cowen", "--map", "1,0,-1,3", "--alpha", "-1", "--trunc", "128", "--block", "16",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["check"], "exact_identity");
    assert_eq!(r["pass"], true);
    assert!(r["residuals"]["max_entry_M"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["truncations"], serde_json::json!([128, 256]));
}

#[test]
fn finite_rank_for_type_b() {
    let (code, r) = report(&[
        "verify", "cowen", "--map", "1,0,-1,3", "--alpha", "-3.5", "--trunc", "256",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["check"], "finite_rank");
    assert!(r["residuals"]["rank_M"].as_f64().unwrap() <= 6.0);
    assert_eq!(r["params"]["rank_bound"], 6);
    assert_eq!(r["singular_values"].as_array().unwrap().len(), 129);
}

#[test]
fn power_mode_dispatches_to_compactness() {
    let (code, r) = report(&["verify", "cowen", "--map", "1,0,-1,3", "--t", "1", "--trunc", "64"]);
    assert_eq!(code, 0);
    assert_eq!(r["check"], "compact_decay");
    assert_eq!(r["decay"].as_array().unwrap().len(), 65);
}

#[test]
fn failing_check_exits_one() {
    let (code, r) = report(&[
        "verify", "cowen", "--map", "2,1,1,2", "--alpha", "0", "--trunc", "32", "--tol", "1e-30",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
}

#[test]
fn bad_input_exits_two() {
    let cases: [&[&str]; 7] = [
        &["verify", "cowen", "--map", "1,0,0,0.5", "--alpha", "-1"],
        &[
            "verify",
            "cowen",
            "--map",
            "0.5,0,0,-1",
            "--alpha",
            "-0.5",
            "--trunc",
            "32",
        ],
        &["verify", "cowen", "--map", "1,0,-1,3", "--trunc", "32"],
        &["verify", "cowen", "--map", "1,0,-1,3", "--alpha", "-1", "--t", "1"],
        &[
            "verify", "cowen", "--map", "1,0,-1,3", "--alpha", "-1", "--trunc", "100",
        ],
        &[
            "verify", "cowen", "--map", "1,0,-1,3", "--alpha", "-1", "--trunc", "64", "--block", "9",
        ],
        &["verify", "heller-a", "--map", "1,1,0,3", "--t", "1", "--trunc", "32"],
    ];
    for args in cases {
        let out = lfadjoint(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "heller-b", "--u", "0.5", "--t", "1", "--trunc", "32"];
    let first = lfadjoint(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, lfadjoint(&args).stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    let keys: Vec<usize> = [
        "\"check\"",
        "\"decay\"",
        "\"params\"",
        "\"pass\"",
        "\"residuals\"",
        "\"truncations\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "top-level keys sorted");
}

#[test]
fn other_verifications() {
    let (code, r) = report(&[
        "verify",
        "perturbation",
        "--map",
        "1,0,-1,3",
        "--t",
        "1",
        "--trunc",
        "64",
        "--block",
        "8",
    ]);
    assert_eq!(code, 0);
    assert!((r["residuals"]["k_diag_4"].as_f64().unwrap() + 0.25).abs() < 1e-12);

    let (code, r) = report(&["verify", "heller-a", "--map", "1,0,-1,3", "--t", "1", "--trunc", "64"]);
    assert_eq!(code, 0);
    assert!(r["residuals"]["h1_minus_g_of_phi"].as_f64().unwrap() < 1e-10);

    let (code, r) = report(&["verify", "compact", "--map", "1,0,-1,3", "--t", "1", "--trunc", "64"]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["t"], 1.0);

    let (code, r) = report(&["kernel", "--alpha", "-3.5"]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["free_degree"], 2);
}

#[test]
fn matrix_csv() {
    let out = lfadjoint(&[
        "matrix",
        "--kind",
        "composition",
        "--map",
        "1,0,-1,3",
        "--alpha",
        "-1",
        "--trunc",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
    assert!(text.contains("\n1,1,0.3333333333333333,0.0\n"));

    let out = lfadjoint(&[
        "matrix",
        "--kind",
        "cowen-difference",
        "--map",
        "1,0,-1,3",
        "--alpha",
        "-3.5",
        "--trunc",
        "32",
        "--singular-values",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,sigma\n0,"));
}

#[test]
fn output_directory_override() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("out-dir-test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = Command::new(env!("CARGO_BIN_EXE_lfadjoint"))
        .args([
            "verify", "cowen", "--map", "1,0,-1,3", "--alpha", "0", "--trunc", "32", "--format", "csv",
        ])
        .env("LFADJOINT_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.join("exact_identity.csv")).unwrap();
    assert!(csv.starts_with("section,key,value\ncheck,,exact_identity\n"));
    assert!(csv.ends_with("pass,,true\n"));
}

#[test]
fn suite_runs_every_check() {
    let (code, r) = report(&["suite"]);
    assert_eq!(code, 0);
    let reports = r.as_array().unwrap();
    assert!(reports.iter().all(|x| x["pass"] == true));
    let checks: Vec<&str> = reports.iter().map(|x| x["check"].as_str().unwrap()).collect();
    let mut sorted = checks.clone();
    sorted.sort();
    assert_eq!(checks, sorted);
    for name in [
        "compact_decay",
        "exact_identity",
        "finite_rank",
        "heller_a",
        "heller_b",
        "kernel_residual",
        "mode_consistency",
        "perturbation",
        "weight_asymptotics",
    ] {
        assert!(checks.contains(&name), "{name}");
    }
}
