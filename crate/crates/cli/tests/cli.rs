//! End-to-end tests of the command-line surface: flags, exit codes, file
//! schemas, and output determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_extgev"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .unwrap_or_else(|e| panic!("failed to run {:?} {:?}: {e}", bin(), args))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn weights_table_has_expected_row() {
    let out = run(&["weights", "--tau", "1", "--sigma", "2", "--pmax", "50", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 52, "header plus 51 data rows");
    let p2: Vec<&str> = rows[3].split(',').collect();
    assert_eq!(p2[0], "2");
    let log_m: f64 = p2[1].parse().unwrap();
    assert!((log_m - 4.0 * 2f64.ln()).abs() <= 1e-12);
}

#[test]
fn weights_rejects_bad_flags() {
    assert_eq!(
        run(&["weights", "--tau", "0", "--sigma", "2", "--pmax", "50"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["weights", "--tau", "1", "--sigma", "2", "--pmax", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn weights_output_is_deterministic() {
    let a = run(&["weights", "--tau", "1.3", "--sigma", "1.7", "--pmax", "40", "--format", "json"]);
    let b = run(&["weights", "--tau", "1.3", "--sigma", "1.7", "--pmax", "40", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical flags must give byte-identical output");
}

#[test]
fn tfr_wigner_fixture_center_is_two() {
    let fx = fixture("unit_gaussian.json");
    let out = run(&["tfr", "--kind", "wigner", "--signal", &fx, "--window", &fx]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "wigner");
    let (nx, nw) = (
        v["grid"]["x"]["count"].as_u64().unwrap() as usize,
        v["grid"]["omega"]["count"].as_u64().unwrap() as usize,
    );
    let center = &v["values"][(nx / 2) * nw + nw / 2];
    assert!((center[0].as_f64().unwrap() - 2.0).abs() <= 1e-8);
    assert!(center[1].as_f64().unwrap().abs() <= 1e-8);
}

#[test]
fn tfr_stft_fixture_center_is_one() {
    let fx = fixture("unit_gaussian.json");
    let out = run(&["tfr", "--kind", "stft", "--signal", &fx, "--window", &fx]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (nx, nw) = (
        v["grid"]["x"]["count"].as_u64().unwrap() as usize,
        v["grid"]["omega"]["count"].as_u64().unwrap() as usize,
    );
    let center = &v["values"][(nx / 2) * nw + nw / 2];
    assert!((center[0].as_f64().unwrap() - 1.0).abs() <= 1e-8);
}

#[test]
fn tfr_error_codes() {
    let fx = fixture("unit_gaussian.json");
    // Missing input file.
    assert_eq!(
        run(&["tfr", "--kind", "wigner", "--signal", "/no/such.json", "--window", &fx])
            .status
            .code(),
        Some(2)
    );
    // Unknown kind.
    assert_eq!(
        run(&["tfr", "--kind", "born-jordan", "--signal", &fx, "--window", &fx])
            .status
            .code(),
        Some(2)
    );
    // Frequency lattice misalignment in fast mode.
    assert_eq!(
        run(&[
            "tfr", "--kind", "stft", "--signal", &fx, "--window", &fx, "--omega-step", "0.031",
        ])
        .status
        .code(),
        Some(3)
    );
    // Schema violation: odd sample count.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"axis":{"center":0.0,"step":0.0625,"count":3},"values":[[1.0,0.0],[1.0,0.0],[1.0,0.0]]}"#,
    )
    .unwrap();
    assert_eq!(
        run(&["tfr", "--kind", "wigner", "--signal", bad.to_str().unwrap(), "--window", &fx])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tfr_csv_format() {
    let fx = fixture("unit_gaussian.json");
    let out = run(&[
        "tfr", "--kind", "grossmann-royer", "--signal", &fx, "--window", &fx, "--format", "csv",
        "--x-count", "4", "--omega-count", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("x,omega,re,im"));
    assert_eq!(text.lines().count(), 17); // header + 4x4
}

#[test]
fn verify_lambert_passes_with_anchored_records() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "lambert", "--json", json.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    let records = v["suites"][0]["records"].as_array().unwrap();
    assert!(records.iter().any(|r| r["inputs"] == "x=e"));
    for r in records {
        let anchor = r["anchor"].as_str().unwrap();
        assert!(!anchor.is_empty());
    }
}

#[test]
fn verify_unknown_suite_rejected() {
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn assoc_and_lambert_and_fit_run() {
    let out = run(&["assoc", "--tau", "1", "--sigma", "2", "--points", "16"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("t,value,argmax,lower_envelope,upper_envelope"));

    let out = run(&["lambert", "--x", "0,1,10", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);

    let out = run(&["fit", "--family", "gaussian", "--max-order", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["tau_joint"]["tau"].as_f64().unwrap().is_finite());

    assert_eq!(
        run(&["fit", "--family", "bump", "--max-order", "6"]).status.code(),
        Some(2)
    );
}
