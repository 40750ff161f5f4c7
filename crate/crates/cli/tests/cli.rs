use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ellis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_example_reports_the_witness() {
    let o = ellis(&["analyze", &data("paper.sub")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: not completely regular; witness φ"));
}

#[test]
fn analyze_bijective_is_almost_distal() {
    let o = ellis(&["analyze", &data("bijective.sub"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "almost distal; nearly simple predicted");
    assert_eq!(v["kernel_model"]["status"], "declined");
}

#[test]
fn non_constant_length_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.sub");
    fs::write(&path, "alphabet: a b\nrules:\na: a b\nb: a b a\n").unwrap();
    let o = ellis(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn missing_file_and_bad_flags_exit_one() {
    assert_eq!(
        ellis(&["analyze", "/nonexistent.sub"]).status.code(),
        Some(1)
    );
    assert_eq!(
        ellis(&["analyze", &data("paper.sub"), "--format", "pdf"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ellis(&["oracle", "nope"]).status.code(), Some(1));
}

#[test]
fn out_dir_gets_every_requested_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report");
    let o = ellis(&[
        "analyze",
        &data("paper.sub"),
        "--format",
        "text,json,dot",
        "--depth",
        "2",
        "--out",
        out.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    for f in [
        "analysis.txt",
        "analysis.json",
        "analysis.dot",
        "windows.txt",
    ] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let windows = fs::read_to_string(out.join("windows.txt")).unwrap();
    assert!(windows.contains("2 c aacaaa.ccbaaccbaabcaaaacaa"));
    assert!(fs::read_to_string(out.join("analysis.dot"))
        .unwrap()
        .starts_with("digraph"));
}

#[test]
fn verify_worked_example_passes() {
    let o = ellis(&["verify-paper-example"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "all 14 golden assertions pass");

    let o = ellis(&["verify-paper-example", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["assertions"].as_array().unwrap().len(), 14);
}

#[test]
fn tampered_example_fails_with_the_first_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.sub");
    fs::write(
        &path,
        "alphabet: a b c\nrules:\na: aacaa\nb: abcaa\nc: acaba\n",
    )
    .unwrap();
    let o = ellis(&[
        "verify-paper-example",
        "--substitution",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("first failure: 2. first iteration windows"));
}

#[test]
fn oracle_cpreg_degree_three() {
    let o = ellis(&["oracle", "cpreg", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 failures"));
    assert!(text.contains("degree 3 maps: 27"));
}

#[test]
fn oracle_rees_json() {
    let o = ellis(&["oracle", "rees", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failure_count"], 0);
}

#[test]
fn fuzz_is_reproducible() {
    let a = ellis(&[
        "fuzz",
        "--instances",
        "10",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let b = ellis(&[
        "fuzz",
        "--instances",
        "10",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert!(matches!(a.status.code(), Some(0) | Some(2)));
}
