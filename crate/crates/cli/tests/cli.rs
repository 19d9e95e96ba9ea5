//! Command-line behavior: exit codes, input errors, env overrides.

use std::io::Write;
use std::process::Output;

use searchtopo::fixtures;

fn run(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_searchtopo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    let mut file = std::fs::File::create(&path).unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["search"]).status.code(), Some(1));
    assert_eq!(run(&["relate", "--words", "a"]).status.code(), Some(1));
}

#[test]
fn missing_corpus_exits_one() {
    let output = run(&["search", "--corpus", "/nonexistent/corpus.jsonl", "a"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("cannot open corpus"));
}

#[test]
fn malformed_jsonl_exits_one_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(&dir, "bad.jsonl", "{\"id\": \"d1\", \"text\": \"a\"}\nnot json\n");
    let output = run(&["search", "--corpus", &path, "a"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 2"));
}

#[test]
fn duplicate_ids_exit_one_naming_the_id() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(
        &dir,
        "dup.jsonl",
        "{\"id\": \"d1\", \"text\": \"a\"}\n{\"id\": \"d1\", \"text\": \"b\"}\n",
    );
    let output = run(&["ingest", "--corpus", &path]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("d1"));
}

#[test]
fn absent_word_is_flagged_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(&dir, "c3.jsonl", fixtures::C3_JSONL);
    let output = run(&["search", "--corpus", &path, "zzz"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["count"], 0);
    assert_eq!(report["absent_words"][0], "zzz");
}

#[test]
fn cap_env_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    // 17 single-token documents give a 17-word vocabulary.
    let lines: String = (0..17)
        .map(|i| format!("{{\"id\": \"d{i:02}\", \"text\": \"w{i:02}\"}}\n"))
        .collect();
    let path = fixture(&dir, "wide.jsonl", &lines);
    let words: Vec<String> = (0..17).map(|i| format!("w{i:02}")).collect();
    let word_list = words.join(",");

    let output = run(&["topology", "--corpus", &path, "--words", &word_list]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("cap"));

    let output = std::process::Command::new(env!("CARGO_BIN_EXE_searchtopo"))
        .args(["topology", "--corpus", &path, "--words", &word_list])
        .env("SEARCHTOPO_CAP", "18")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn text_format_renders_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(&dir, "c3.jsonl", fixtures::C3_JSONL);
    let output = run(&["ingest", "--corpus", &path, "--format", "text"]);
    assert!(output.status.success());
    assert!(String::from_utf8_lossy(&output.stdout).contains("3 documents"));

    let output = run(&["search", "--corpus", &path, "b & c", "--format", "text"]);
    assert!(String::from_utf8_lossy(&output.stdout).contains("2 documents"));
}

#[test]
fn anomaly_presence_is_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(&dir, "ml5.jsonl", fixtures::ML5_JSONL);
    let output = run(&[
        "anomaly",
        "--corpus",
        &path,
        "--keywords",
        "data,science,machine,learning",
        "--delta",
        "0.4",
        "--pool",
        "all",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["ultimate_anomalies"][0], "1");
}

#[test]
fn anomaly_rejects_bad_delta() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(&dir, "ml5.jsonl", fixtures::ML5_JSONL);
    let output = run(&[
        "anomaly", "--corpus", &path, "--keywords", "data", "--delta", "1.5",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn selftest_passes_without_corpus() {
    let output = run(&["selftest"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["all_passed"], serde_json::Value::Bool(true));
    assert_eq!(report["suites"].as_array().unwrap().len(), 3);
}

#[test]
fn check_requires_corpus_or_random() {
    let output = run(&["check"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn primal_cap_rejection_names_size() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(&dir, "c3.jsonl", fixtures::C3_JSONL);
    let seed: Vec<String> = (0..25).map(|i| format!("t{i:02}")).collect();
    let output = run(&[
        "primal",
        "--corpus",
        &path,
        "--seed",
        &seed.join(","),
        "--cap",
        "1000000",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("33554431"));
}
