use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn ualg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ualg"))
        .args(args)
        .env_remove("UALG_SEED")
        .output()
        .unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes() {
    let m2 = corpus("m2_q7.alg");
    assert_eq!(ualg(&["analyze", path(&m2)]).status.code(), Some(0));
    let m3 = corpus("m3_q7.alg");
    assert_eq!(
        ualg(&["analyze", path(&m3), "--checks", "bstar"])
            .status
            .code(),
        Some(1)
    );
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.alg");
    std::fs::write(&broken, "{\n  \"name\": \"x\",\n  \"prime\": 7,\n").unwrap();
    let out = ualg(&["analyze", path(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    let bad = dir.path().join("bad.alg");
    std::fs::write(
        &bad,
        r#"{"name": "x", "prime": 7, "dim": 1, "table": [[0, 3, 0, "1"]]}"#,
    )
    .unwrap();
    assert_eq!(ualg(&["validate", path(&bad)]).status.code(), Some(2));
}

#[test]
fn report_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.txt");
    let tri = corpus("triangular2_q5.alg");
    let out = ualg(&[
        "analyze",
        path(&tri),
        "--checks",
        "radical",
        "--format",
        "text",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(report).unwrap();
    assert!(text.contains("radical dimension: 1"));
}

#[test]
fn seed_flag_overrides_environment() {
    let m2 = corpus("m2_q7.alg");
    let args = ["analyze", path(&m2), "--checks", "dual", "--seed", "3"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_ualg"))
        .args(args)
        .env("UALG_SEED", "9")
        .output()
        .unwrap();
    let plain = ualg(&args);
    assert_eq!(with_env.stdout, plain.stdout);
    let env_only = Command::new(env!("CARGO_BIN_EXE_ualg"))
        .args(["analyze", path(&m2), "--checks", "dual"])
        .env("UALG_SEED", "9")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&env_only.stdout).unwrap();
    assert_eq!(report["seed"], 9);
}

#[test]
fn rescaled_input_parses() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("scaled.alg");
    std::fs::write(
        &f,
        r#"{"name": "Q_7 scaled", "prime": 7, "dim": 1, "table": [[0, 0, 0, "1/49"]]}"#,
    )
    .unwrap();
    let out = ualg(&["validate", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("rescale"));
}
