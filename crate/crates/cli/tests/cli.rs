use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn cli(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_local-antimagic"))
        .args(args)
        .env_remove("LOCAL_ANTIMAGIC_MAX_LABELS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file
}

#[test]
fn label_then_verify_round_trips() {
    for (t, n) in [(2, 1), (2, 2), (2, 5), (3, 4), (4, 3), (5, 2), (6, 2)] {
        let (t, n) = (t.to_string(), n.to_string());
        let labeled = cli(&["label", "--t", &t, "--n", &n], None);
        assert_eq!(labeled.status.code(), Some(0));
        let verified = cli(&["verify", "--input", "-"], Some(&labeled.stdout));
        assert_eq!(verified.status.code(), Some(0), "t = {t}, n = {n}");
        assert_eq!(json(&verified)["is_local_antimagic"], true);
    }
}

#[test]
fn ternary_four_levels_has_120_labels() {
    let out = cli(&["label", "--t", "3", "--n", "4", "--format", "json"], None);
    let labels = json(&out)["labels"].as_array().unwrap().len();
    assert_eq!(labels, 120);
    // Same bytes on every run.
    assert_eq!(
        cli(&["label", "--t", "3", "--n", "4"], None).stdout,
        out.stdout
    );
}

#[test]
fn predict_binary_depth_one() {
    let out = cli(&["predict", "--t", "2", "--n", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["source"], "closed_form");
    let row = &v["rows"][1];
    assert_eq!(row["row_depth"], 1);
    assert_eq!(row["kind"], "constant_with_jump");
    assert_eq!(row["constant_color"], 17);
    assert_eq!(row["jump_color"], 20);

    let odd = cli(&["predict", "--t", "3", "--n", "3"], None);
    assert_eq!(json(&odd)["source"], "extracted");
}

#[test]
fn chi_la_on_small_inputs() {
    let p3 = write_temp(r#"{"nodes": 3, "edges": [[0, 1], [1, 2]]}"#);
    let out = cli(&["chi-la", "--input", p3.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["chi_la"], 3);

    let binary = write_temp(r#"{"t": 2, "n": 2}"#);
    let path = binary.path().to_str().unwrap();
    let pruned = json(&cli(&["chi-la", "--input", path], None));
    let full = json(&cli(&["chi-la", "--input", path, "--no-prune"], None));
    assert_eq!(pruned["chi_la"], 5);
    assert_eq!(full["chi_la"], 5);
    assert_eq!(full["labelings_examined"], 720);

    let too_big = cli(&["chi-la", "--input", path, "--max-edges", "5"], None);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn partition_prints_the_tuples() {
    let out = cli(
        &["partition", "--t", "2", "--count", "2", "--base", "1"],
        None,
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"source":[1,4],"tuple_size":2,"tuples":[[1,3],[2,4]],"profile":{"consecutive":[4,4],"isolate":6}}"#
    );
}

#[test]
fn export_dot_writes_the_file() {
    let labeling = cli(&["label", "--t", "2", "--n", "2"], None).stdout;
    let input = write_temp(std::str::from_utf8(&labeling).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("tree.dot");
    let out = cli(
        &[
            "export-dot",
            "--input",
            input.path().to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out_path).unwrap();
    assert!(dot.starts_with("graph labeling {"));
    assert_eq!(json(&out)["bytes"], dot.len());
}

#[test]
fn exit_codes() {
    // A repeated label: valid input, invalid labeling.
    let bad = cli(
        &["verify", "--input", "-"],
        Some(br#"{"nodes":3,"edges":[[0,1,1],[1,2,1]]}"#),
    );
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(
        json(&bad)["label_issues"]["duplicates"],
        serde_json::json!([1])
    );

    let syntax = cli(&["verify", "--input", "-"], Some(b"{\"t\": 2,\n \"n\" 1}"));
    assert_eq!(syntax.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("line 2"));

    let field = cli(
        &["verify", "--input", "-"],
        Some(br#"{"t":2,"n":1,"labels":[{"level":1,"index":0,"label":"x"}]}"#),
    );
    assert_eq!(field.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&field.stderr).contains("labels[0].label"));

    assert_eq!(
        cli(&["label", "--t", "1", "--n", "2"], None).status.code(),
        Some(2)
    );
    assert_eq!(cli(&["label", "--t", "3"], None).status.code(), Some(2));
    assert_eq!(
        cli(
            &["label", "--t", "3", "--n", "4", "--max-labels", "50"],
            None
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn size_guard_reads_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_local-antimagic"))
        .args(["label", "--t", "3", "--n", "4"])
        .env("LOCAL_ANTIMAGIC_MAX_LABELS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}
