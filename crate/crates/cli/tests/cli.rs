//! End-to-end tests of the `steiner4` binary: every subcommand is exercised
//! through `std::process::Command` against the documented exit codes
//! (0 success/PASS, 1 verification or classification mismatch, 2 usage or
//! input error) and output formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_steiner4");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("terminated by exit, not signal")
}

/// A per-test scratch directory under the system temp dir.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("steiner4-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn witt_verify_reports_both_flag_orbits() {
    let output = run(&["witt", "--v", "11", "--verify"]);
    let text = stdout(&output);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    assert!(text.contains("flag orbit 330"), "stdout: {text}");
    assert!(text.contains("flag orbit 1771"), "stdout: {text}");
    assert!(text.contains("PASS"), "stdout: {text}");
}

#[test]
fn witt_emits_files_that_verify_design_accepts() {
    let dir = scratch("emit");
    let design = dir.join("design11.txt");
    let group = dir.join("group11.txt");
    let emit = run(&[
        "witt",
        "--v",
        "11",
        "--emit",
        design.to_str().unwrap(),
        "--group",
        group.to_str().unwrap(),
    ]);
    assert_eq!(code(&emit), 0, "stderr: {}", stderr(&emit));

    let verify = run(&[
        "verify-design",
        "--file",
        design.to_str().unwrap(),
        "--t",
        "4",
        "--group",
        group.to_str().unwrap(),
    ]);
    let text = stdout(&verify);
    assert_eq!(code(&verify), 0, "stdout: {text}");
    assert!(text.contains("steiner 4-(11, 5, 1): PASS"), "stdout: {text}");
    assert!(text.contains("block preservation: PASS"), "stdout: {text}");
    assert!(text.contains("flag-transitive: PASS"), "stdout: {text}");

    // Dropping one block leaves some 4-subset uncovered: FAIL, exit 1.
    let full = fs::read_to_string(&design).expect("design file");
    let mut lines: Vec<&str> = full.lines().collect();
    assert_eq!(lines.len(), 67);
    lines.pop();
    let broken = dir.join("broken.txt");
    fs::write(&broken, format!("11 5 65\n{}\n", lines[1..].join("\n"))).expect("write");
    let fail = run(&["verify-design", "--file", broken.to_str().unwrap()]);
    assert_eq!(code(&fail), 1, "stdout: {}", stdout(&fail));
    assert!(stdout(&fail).contains("FAIL"), "stdout: {}", stdout(&fail));

    // A missing file is an input error, exit 2.
    let missing = run(&["verify-design", "--file", dir.join("nope.txt").to_str().unwrap()]);
    assert_eq!(code(&missing), 2, "stderr: {}", stderr(&missing));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn orbits_profile_matches_lemma_and_oracle() {
    // A5 inside PSL(2, 11) is transitive on the 12 points: N_12 = 1.
    let plain = run(&["orbits", "--q", "11", "--subgroup", "a5"]);
    assert_eq!(code(&plain), 0, "stderr: {}", stderr(&plain));
    assert_eq!(stdout(&plain), "12:1\n");

    let oracle = run(&["orbits", "--q", "11", "--subgroup", "a5", "--oracle"]);
    let text = stdout(&oracle);
    assert_eq!(code(&oracle), 0, "stdout: {text}");
    assert!(text.contains("12:1"), "stdout: {text}");
    assert!(text.ends_with("AGREE\n"), "stdout: {text}");
}

#[test]
fn orbits_rejects_absent_subgroup_class() {
    // 37 = 5 (mod 8), so PSL(2, 37) has no S4 subgroup.
    let output = run(&["orbits", "--q", "37", "--subgroup", "s4"]);
    assert_eq!(code(&output), 2, "stdout: {}", stdout(&output));
    assert!(stderr(&output).contains("s4"), "stderr: {}", stderr(&output));
}

#[test]
fn scan_suzuki_eliminates_every_field() {
    let output = run(&["scan", "--family", "sz", "--max-e", "6"]);
    let text = stdout(&output);
    assert_eq!(code(&output), 0, "stdout: {text}");
    assert!(text.contains("6 rows"), "stdout: {text}");
    assert!(text.contains("survivors 0"), "stdout: {text}");
}

#[test]
fn scan_rejects_unknown_family_and_stray_flags() {
    let unknown = run(&["scan", "--family", "nope"]);
    assert_eq!(code(&unknown), 2);
    assert!(stderr(&unknown).contains("known families"), "stderr: {}", stderr(&unknown));

    let stray = run(&["scan", "--family", "sz", "--max-v", "100"]);
    assert_eq!(code(&stray), 2);
    assert!(stderr(&stray).contains("--max-v"), "stderr: {}", stderr(&stray));
}

#[test]
fn classify_is_deterministic_and_matches_the_theorem() {
    let dir = scratch("classify");
    let first = dir.join("r1.json");
    let second = dir.join("r2.json");
    for out in [&first, &second] {
        let output = run(&[
            "classify",
            "--max-q",
            "40",
            "--max-v",
            "5000",
            "--out",
            out.to_str().unwrap(),
        ]);
        let text = stdout(&output);
        assert_eq!(code(&output), 0, "stdout: {text}");
        assert!(text.contains("survivor: mathieu k=5 v=11"), "stdout: {text}");
        assert!(text.contains("survivor: mathieu k=7 v=23"), "stdout: {text}");
    }
    let a = fs::read(&first).expect("first report");
    let b = fs::read(&second).expect("second report");
    assert_eq!(a, b, "reports must be byte-identical across runs");
    let json = String::from_utf8(a).expect("utf-8 report");
    assert!(json.starts_with("[\n"), "report is a JSON array");
    assert_eq!(json.matches("\"verdict\":\"survivor\"").count(), 2);
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_flag_exits_with_usage_code() {
    let output = run(&["witt", "--bogus"]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("--bogus"), "stderr: {}", stderr(&output));
}
