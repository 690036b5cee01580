use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn qpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("qpi-cli-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &[u8]) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_then_query_saved_index() {
    let dir = Scratch::new("build");
    let text = dir.file("sample.txt", b"abaababaababa");
    let index = dir.0.join("sample.qpi");
    let out = qpi(&["build", s(&text), "-o", s(&index)]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("n=13 "));
    let out = qpi(&[
        "query",
        "--index",
        s(&index),
        "MINCOVER 1 13",
        "MINCOVER 2 13",
        "ISCOVER 1 13 2",
        "ALLCOVERS 1 13",
    ]);
    assert_eq!(stdout(&out), "3\n7\nfalse\n3:5:3\n");
}

#[test]
fn queries_from_stdin_keep_going_after_errors() {
    let dir = Scratch::new("stdin");
    let text = dir.file("aaaa.txt", b"aaaa");
    let mut child = Command::new(env!("CARGO_BIN_EXE_qpi"))
        .args(["query", "--text", s(&text)])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"ALLCOVERS 1 4\nMINCOVER 3 9\nnope\n\nBORDERS 2 4\nRUNS\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "1:1:4");
    assert!(lines[1].starts_with("ERR ERANGE"));
    assert!(lines[2].starts_with("ERR EPARSE"));
    assert_eq!(lines[3], "1:1:3");
    assert_eq!(lines[4], "1..4/1");
}

#[test]
fn json_output_is_one_object_per_line() {
    let dir = Scratch::new("json");
    let text = dir.file("t.txt", b"abaababaababa");
    let out = qpi(&[
        "--json",
        "query",
        "--text",
        s(&text),
        "PERIODS 1 13",
        "COVEREDPREF 1 13 4",
    ]);
    let vals: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(vals[0]["ok"], true);
    let starts: Vec<u64> = vals[0]["answer"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["start"].as_u64().unwrap())
        .collect();
    assert_eq!(starts, vec![5, 10, 12, 13]);
    assert_eq!(vals[1]["query"], "COVEREDPREF 1 13 4");
}

#[test]
fn missing_inputs_fail_cleanly() {
    let out = qpi(&["query", "MINCOVER 1 2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qpi(&["build", "/nonexistent/qpi-input"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = Scratch::new("empty");
    let empty = dir.file("empty.txt", b"");
    let out = qpi(&["build", s(&empty)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}

#[test]
fn selftest_command_reports_success() {
    let out = qpi(&[
        "--seed",
        "9",
        "selftest",
        "--exhaustive-len",
        "5",
        "--strings",
        "3",
        "--len",
        "80",
        "--factors",
        "40",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 mismatches"));
}
