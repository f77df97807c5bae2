//! Golden-file and exit-code checks for the binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    use std::io::Write as _;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chibound"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().expect("spawn");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).expect("stdin");
    }
    child.wait_with_output().expect("wait")
}

fn assert_matches_golden(args: &[&str], stdin: Option<&str>, golden: &str) {
    let out = run(args, stdin, &[]);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    let expected = std::fs::read(golden_dir().join(golden)).expect("golden file");
    assert_eq!(
        out.stdout,
        expected,
        "{args:?} diverged from {golden}:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn generated_edge_lists_match_goldens() {
    for seed in ["101", "202", "303"] {
        assert_matches_golden(
            &["gen", "random", "--n", "8", "--p", "0.5", "--seed", seed],
            None,
            &format!("random-n8-s{seed}.edges"),
        );
        assert_matches_golden(
            &["gen", "tournament", "--n", "7", "--seed", seed],
            None,
            &format!("tournament-n7-s{seed}.edges"),
        );
    }
}

#[test]
fn robust_certificates_match_goldens() {
    for seed in ["101", "202", "303"] {
        let input =
            std::fs::read_to_string(golden_dir().join(format!("random-n8-s{seed}.edges")))
                .unwrap();
        assert_matches_golden(
            &["decompose", "robust", "--h", "2", "--k", "2"],
            Some(&input),
            &format!("robust-s{seed}.json"),
        );
    }
}

#[test]
fn pipeline_colorings_match_goldens() {
    for seed in ["101", "202", "303"] {
        let input =
            std::fs::read_to_string(golden_dir().join(format!("tournament-n7-s{seed}.edges")))
                .unwrap();
        assert_matches_golden(&["color", "--kappa", "7"], Some(&input), &format!("color-s{seed}.json"));
    }
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["analyze", "--chi"], Some("not an edge list\n"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn bad_parameters_exit_2() {
    let out = run(&["verify", "no-such-suite"], None, &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "shift", "--n", "1"], None, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expected_absence_violation_exits_1() {
    let four_cycle = "n 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";
    let out = run(&["analyze", "--holes", "--expect-absent"], Some(four_cycle), &[]);
    assert_eq!(out.status.code(), Some(1));
    // Same query without the flag reports the hole and succeeds.
    let out = run(&["analyze", "--holes"], Some(four_cycle), &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"directed\""));
}

#[test]
fn exhausted_budget_exits_3() {
    // A 5-cycle: clique bound 2, greedy bound 3, so the exact search runs
    // and trips the one-node budget.
    let five_cycle = "n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n";
    let out = run(&["analyze", "--chi"], Some(five_cycle), &[("CHIBOUND_NODE_BUDGET", "1")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn dot_export_round_trips_structure() {
    let out = run(&["gen", "cyclic", "--m", "2"], None, &[]);
    let dot = run(&["export", "--dot"], Some(&String::from_utf8(out.stdout).unwrap()), &[]);
    assert_eq!(dot.status.code(), Some(0));
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph {"));
    assert_eq!(text.matches("->").count(), 10);
}
