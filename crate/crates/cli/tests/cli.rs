use std::path::Path;
use std::process::{Command, Output};

fn qturan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qturan")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_enumerate_six() {
    let out = qturan(&["verify", "--enumerate", "6", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("processed: 112"), "{stdout}");
    assert!(stdout.contains("violations: 0"));
}

#[test]
fn outputs_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut results = Vec::new();
    for (cmd, extra) in [
        ("verify", vec!["--enumerate", "1..6"]),
        ("conjecture", vec!["--enumerate", "6"]),
        ("counterexample", vec!["--n-min", "4", "--n-max", "25"]),
        ("random-signed", vec!["--n-max", "10", "--trials", "500", "--seed", "3"]),
    ] {
        let mut files = Vec::new();
        for threads in ["1", "8"] {
            let json = dir.path().join(format!("{cmd}-{threads}.json"));
            let csv = dir.path().join(format!("{cmd}-{threads}.csv"));
            let mut args = vec![cmd];
            args.extend(&extra);
            args.extend(["--threads", threads, "--json", path(&json), "--csv", path(&csv)]);
            let out = qturan(&args);
            assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
            files.push((std::fs::read(&json).unwrap(), std::fs::read(&csv).unwrap()));
        }
        results.push(files[0] == files[1]);
        assert!(!files[0].1.is_empty());
    }
    assert!(results.iter().all(|&same| same));
}

#[test]
fn malformed_line_reported_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("graphs.g6");
    std::fs::write(&input, "D?{\nA`\nC~\n").unwrap();
    let out = qturan(&["verify", "--input", path(&input), "--threads", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("input error (line 2)"), "{stdout}");
    assert!(stdout.contains("processed: 2"));

    let out = qturan(&["verify", "--input", path(&input), "--fail-fast"]);
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("processed: 1"), "{stdout}");
}

#[test]
fn disconnected_graphs_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("graphs.g6");
    // Two isolated vertices, then a path.
    std::fs::write(&input, "A?\nBW\n").unwrap();
    let json = dir.path().join("out.json");
    let out = qturan(&["verify", "--input", path(&input), "--json", path(&json)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"skipped_disconnected\": 1"), "{text}");
    assert!(text.contains("\"processed\": 1"));
}

#[test]
fn signed_input_checks_signed_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.sg");
    std::fs::write(&input, "4 6\n0 1 -1\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n2 3 1\nw 0 2.5\n").unwrap();
    let csv = dir.path().join("out.csv");
    let out = qturan(&["verify", "--input", path(&input), "--csv", path(&csv)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("graph,n,m,omega,bound_name,bound_value,measured,slack,equality,classification"));
    assert!(text.contains("weighted-signed-q"));
    assert!(text.contains("signed-frustration"));
}

#[test]
fn conjecture_never_fails() {
    let out = qturan(&["conjecture", "--enumerate", "1..5", "--theorem", "edge-q-conjecture"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn counterexample_family_passes() {
    let out = qturan(&["counterexample", "--n-min", "4", "--n-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("n=4 q=5.236067977500 rhs=5.111111111111 passed=true"), "{stdout}");
}

#[test]
fn bad_arguments_exit_nonzero() {
    assert_eq!(qturan(&["counterexample", "--n-min", "3"]).status.code(), Some(1));
    assert_eq!(qturan(&["random-signed", "--n-max", "13"]).status.code(), Some(1));
    assert_eq!(qturan(&["verify"]).status.code(), Some(1));
    assert_eq!(qturan(&["verify", "--enumerate", "4", "--theorem", "bogus"]).status.code(), Some(1));
    assert_eq!(qturan(&["verify", "--enumerate", "4", "--threads", "0"]).status.code(), Some(1));
    assert_eq!(qturan(&["frobnicate"]).status.code(), Some(1));
}
