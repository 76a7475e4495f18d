//! End-to-end tests of the binary: output bytes, exit codes, flags.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn session_file(contents: &str) -> PathBuf {
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    let path = std::env::temp_dir().join(format!(
        "tracealg-cli-test-{}-{n}.alg",
        std::process::id()
    ));
    std::fs::write(&path, contents).expect("temp session file is writable");
    path
}

fn tracealg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracealg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn trace_session_prints_canonical_ideals() {
    let file = session_file("ring R = QQ[x,y,z];\nideal I = (x*y, x*z);\ntrace I;\nistrace I;\n");
    let out = tracealg(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(y, z)\nfalse\n");
    assert!(stderr(&out).is_empty());
}

#[test]
fn json_mode_emits_one_object_per_line() {
    let file = session_file("ring R = QQ[x,y,z];\nideal I = (x*y, x*z);\ntrace I;\nistrace I;\n");
    let out = tracealg(&["run", file.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"command\":\"trace\",\"ideal\":\"(y, z)\",\"ring\":\"QQ[x,y,z]\"}\n\
         {\"command\":\"istrace\",\"result\":false,\"ring\":\"QQ[x,y,z]\"}\n"
    );
}

#[test]
fn syntax_errors_exit_two_with_location() {
    let file = session_file("ring R = QQ[x,y]/(x^2 y);\n");
    let out = tracealg(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let err = stderr(&out);
    assert!(err.contains("parse error"), "stderr: {err}");
    assert!(err.contains("1:23"), "stderr: {err}");
}

#[test]
fn math_failures_exit_one_and_keep_earlier_output() {
    let file = session_file("ring R = QQ[x]/(x^2);\nartinian;\nring S = QQ[x,y];\nsocle S;\n");
    let out = tracealg(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "true\n");
    let err = stderr(&out);
    assert!(err.contains("4:1"), "stderr: {err}");
    assert!(err.contains("Artinian"), "stderr: {err}");
}

#[test]
fn missing_file_exits_one() {
    let out = tracealg(&["run", "/nonexistent/session.alg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn monomial_order_flag_changes_the_basis() {
    let file = session_file("ring R = QQ[x,y];\ngb (x - y^2);\n");
    let default = tracealg(&["run", file.to_str().unwrap()]);
    assert_eq!(stdout(&default), "(y^2 - x)\n");
    let lex = tracealg(&["run", file.to_str().unwrap(), "--order", "lex"]);
    assert_eq!(stdout(&lex), "(x - y^2)\n");
    let degrevlex = tracealg(&["run", file.to_str().unwrap(), "--order", "degrevlex"]);
    assert_eq!(stdout(&degrevlex), stdout(&default));
}

#[test]
fn oracle_routes_agree_on_traces() {
    let src = "ring R = QQ[b,c]/(b^3, c^3, b*c);\ntrace (b);\n";
    let file = session_file(src);
    let mut outputs = Vec::new();
    for oracle in ["groebner", "linear", "both"] {
        let out = tracealg(&["run", file.to_str().unwrap(), "--oracle", oracle]);
        assert_eq!(out.status.code(), Some(0), "oracle {oracle}");
        outputs.push(stdout(&out));
    }
    assert_eq!(outputs[0], "(b, c^2)\n");
    assert!(outputs.iter().all(|o| o == &outputs[0]));
}

#[test]
fn gorenstein_verdicts_render_with_witness_and_seed() {
    let file = session_file("ring R = QQ[b,c]/(b^3, c^3, b*c);\ngorenstein R;\n");
    let out = tracealg(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NotGorenstein witness=(b) socle_dim=2\n");

    let file = session_file("ring R = QQ[x,y]/(x^2, y^2);\ngorenstein R samples=5 seed=3;\n");
    let out = tracealg(&["run", file.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(
        line.contains("\"decision\":\"ConsistentWithGorenstein\""),
        "line: {line}"
    );
    assert!(line.contains("\"seed\":3"), "line: {line}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let src = "ring R = QQ[b,c]/(b^3, c^3, b*c);\nideal I = (b);\ntrace I;\nann I;\nannann I;\n\
               socle R;\ngorenstein R;\nequiv R;\nmodule M = coker [[b, 0]; [0, c]];\ncompare M;\n";
    let file = session_file(src);
    for flags in [&[][..], &["--json"]] {
        let mut args = vec!["run", file.to_str().unwrap()];
        args.extend_from_slice(flags);
        let first = tracealg(&args);
        let second = tracealg(&args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout);
        assert!(!first.stdout.is_empty());
    }
}

#[test]
fn bundled_sessions_run_clean() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../sessions");
    for name in ["demo.alg", "nongorenstein.alg"] {
        let path = root.join(name);
        let out = tracealg(&["run", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        assert!(!stdout(&out).is_empty());
        let json = tracealg(&["run", path.to_str().unwrap(), "--json"]);
        assert_eq!(json.status.code(), Some(0));
        for line in stdout(&json).lines() {
            let v: serde_json::Value = serde_json::from_str(line).expect("valid json per line");
            assert!(v.get("command").is_some() || v.get("note").is_some());
        }
    }
}

#[test]
fn check_paper_suite_passes() {
    let out = tracealg(&["check", "--suite", "paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(*lines.last().unwrap(), "paper: 6/6 passed");
    for line in &lines[..lines.len() - 1] {
        assert!(line.starts_with("PASS [paper] "), "line: {line}");
    }
}

#[test]
fn check_emits_json_cases_and_summary() {
    let out = tracealg(&["check", "--suite", "paper", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("each line parses");
        assert_eq!(v["suite"], "paper");
    }
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["cases"], 6);
    assert_eq!(summary["failures"], 0);
    assert_eq!(summary["passed"], true);
}
