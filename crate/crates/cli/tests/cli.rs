//! End-to-end checks of the command surface beyond the acceptance goldens:
//! exit-code contract, file round-trips, and verbosity control.

use std::fs;
use std::process::Command;

fn haarsys(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_haarsys"))
        .args(args)
        .env_remove("HAARSYS_VERBOSITY")
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

#[test]
fn unknown_subcommand_exits_2_with_usage() {
    let (code, _, stderr) = haarsys(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(stderr.to_lowercase().contains("usage"));
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, _, stderr) = haarsys(&["validate", "/no/such/file.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));
}

#[test]
fn malformed_manifest_reports_diagnostics() {
    let dir = tempdir();
    let path = dir.join("bad.json");
    fs::write(&path, r#"{"kind":"function","payload":{"arrows":[[0,"2/4"]]}}"#).unwrap();
    let (code, _, stderr) = haarsys(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("rational-unnormalized"));
}

#[test]
fn synth_writes_a_reloadable_system() {
    let dir = tempdir();
    let out = dir.join("system.json");
    let (code, _, _) = haarsys(&[
        "haar",
        "synth",
        "--example",
        "z4-sign",
        "--nu",
        "uniform:1/2",
        "--lambda",
        "const:3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    // the written system passes verification against the same groupoid
    let (code, stdout, _) = haarsys(&["haar", "verify", "example:z4-sign", out.to_str().unwrap()]);
    assert_eq!(code, 0, "verify failed: {stdout}");
    assert!(stdout.contains("Haar system"));

    // and the weights are lambda * nu = 3/2 everywhere
    let written = fs::read_to_string(&out).unwrap();
    assert!(written.contains("\"3/2\""));
}

#[test]
fn verify_rejects_decoupled_weights_with_exit_1() {
    let dir = tempdir();
    let path = dir.join("bad_system.json");
    // pair2: weight 2 on one arrow of G^1 breaks left invariance
    fs::write(
        &path,
        r#"{"kind":"system","payload":{"measures":[
            {"x":0,"weights":[[0,"1"],[1,"1"]]},
            {"x":1,"weights":[[2,"1"],[3,"2"]]}
        ]}}"#,
    )
    .unwrap();
    let (code, stdout, _) = haarsys(&["haar", "verify", "example:pair2", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAILS"));
}

#[test]
fn dangling_system_ids_are_domain_errors_not_crashes() {
    let dir = tempdir();
    let path = dir.join("dangling.json");
    fs::write(
        &path,
        r#"{"kind":"system","payload":{"measures":[{"x":0,"weights":[[99,"1"]]}]}}"#,
    )
    .unwrap();
    let (code, stdout, _) = haarsys(&[
        "haar",
        "verify",
        "example:pair2",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["report"]["valid"], false);
    assert_eq!(report["report"]["domainErrors"][0], serde_json::json!([0, 99]));
}

#[test]
fn decompose_reports_structure() {
    let (code, stdout, _) = haarsys(&["decompose", "--example", "bundle-z2-s3", "--json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["isotropy"][0]["type"], "Z2");
    assert_eq!(report["isotropy"][1]["type"], "S3");
    assert_eq!(report["quotient"]["arrows"], 2);
    assert_eq!(report["wellDefined"], true);
}

#[test]
fn conv_test_is_deterministic_for_a_seed() {
    let args = [
        "conv", "test", "example:pair3", "counting", "--seed", "11", "--trials", "5", "--json",
    ];
    let (code, first, _) = haarsys(&args);
    assert_eq!(code, 0);
    let (_, second, _) = haarsys(&args);
    assert_eq!(first, second);
}

#[test]
fn bundle_eval_round_trip_through_files() {
    let dir = tempdir();
    let phi = dir.join("phi.json");
    fs::write(
        &phi,
        r#"{"kind":"function","payload":{"sheets":[
            [["0","1"],["1","1"]],
            [["0","0"],["1/4","0"],["1/2","1"],["3/4","0"],["1","0"]]
        ]}}"#,
    )
    .unwrap();
    let (code, stdout, _) = haarsys(&[
        "bundle",
        "eval",
        "example:constant-z2",
        "const:2",
        phi.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["continuous"], true);
    // at x = 1/2 the integral is 2·(1 + 1) = 4
    assert!(report["value"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v == "4"));

    // the same sheet function jumps on the drop bundle
    let (code, stdout, _) = haarsys(&[
        "bundle",
        "eval",
        "example:drop-bundle",
        "const:2",
        phi.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["continuous"], false);
    assert_eq!(report["discontinuities"][0]["x"], "1/2");
    assert_eq!(report["discontinuities"][0]["discrepancy"], "2");
}

#[test]
fn quiet_verbosity_suppresses_witness_lines() {
    let output = Command::new(env!("CARGO_BIN_EXE_haarsys"))
        .args(["validate", "--example", "broken-pair3"])
        .env("HAARSYS_VERBOSITY", "quiet")
        .output()
        .unwrap();
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.contains("INVALID"));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "haarsys-cli-test-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    fs::create_dir_all(&dir).unwrap();
    dir
}
