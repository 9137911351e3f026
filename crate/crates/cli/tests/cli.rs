use std::io::Write;
use std::process::{Command, Output, Stdio};

use mpqenum_cli::graph6;

fn mpqenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpqenum"))
        .args(args)
        .env_remove("MPQENUM_JOBS")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mpqenum"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn enumerate_small() {
    let o = mpqenum(&["enumerate", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(stderr(&o).contains("count=4"), "{}", stderr(&o));

    let o = mpqenum(&["enumerate", "--n", "1"]);
    assert_eq!(stdout(&o), "1,1\n");
}

#[test]
fn enumerate_graph6_reparses() {
    let o = mpqenum(&["enumerate", "--n", "4", "--format", "graph6"]);
    assert!(o.status.success());
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 10);
    let mut edge_counts = Vec::new();
    for l in &lines {
        let (n, edges) = graph6::decode(l).unwrap();
        assert_eq!(n, 4);
        edge_counts.push(edges.len());
    }
    edge_counts.sort();
    assert_eq!(edge_counts, [0, 1, 2, 2, 3, 3, 3, 4, 5, 6]);
}

#[test]
fn enumerate_adjlist() {
    let o = mpqenum(&["enumerate", "--n", "2", "--format", "adjlist"]);
    assert_eq!(stdout(&o), "1:2 2:1\n1: 2:\n");
}

#[test]
fn sequential_runs_are_identical() {
    let a = mpqenum(&["enumerate", "--n", "7", "--sequential"]);
    let b = mpqenum(&["enumerate", "--n", "7", "--jobs", "4", "--sequential"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 369);
}

#[test]
fn parallel_run_emits_same_set() {
    let seq = mpqenum(&["enumerate", "--n", "6"]);
    let par = Command::new(env!("CARGO_BIN_EXE_mpqenum"))
        .args(["enumerate", "--n", "6"])
        .env("MPQENUM_JOBS", "3")
        .output()
        .unwrap();
    let sorted = |o: &Output| {
        let mut v: Vec<String> = stdout(o).lines().map(str::to_string).collect();
        v.sort();
        v
    };
    assert_eq!(sorted(&seq), sorted(&par));
    assert_eq!(sorted(&par).len(), 92);
}

#[test]
fn count_and_out_file() {
    let o = mpqenum(&["count", "--n", "5"]);
    assert_eq!(stdout(&o), "27\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.txt");
    let o = mpqenum(&["enumerate", "--n", "5", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
    assert_eq!(text.lines().count(), 27);
}

#[test]
fn single_graph_commands() {
    assert_eq!(stdout(&mpqenum(&["canonize", "2,2,1,1"])), "1,1,2,2\n");
    assert_eq!(stdout(&mpqenum(&["children", "1,2,2,1"])), "1,1,2,2\n");
    assert_eq!(stdout(&mpqenum(&["isomorphic", "1,2,1,2", "1,2,2,1"])), "yes\n");
    assert_eq!(stdout(&mpqenum(&["isomorphic", "1,1,2,2", "1,2,2,1"])), "no\n");
    assert_eq!(
        stdout(&mpqenum(&["interval-edges", "1,2,3,3,4,4,2,1"])),
        "1,3 RotablePath\n1,4 RotablePath\n2,3 RotablePath\n2,4 RotablePath\n"
    );
}

#[test]
fn exit_codes() {
    let o = mpqenum(&["parent", "1,2,3,3,2,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("complete graph has no parent"));

    let o = mpqenum(&["canonize", "1,1,1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("does not occur exactly twice"), "{}", stderr(&o));

    assert_eq!(mpqenum(&["enumerate"]).status.code(), Some(2));
    assert_eq!(mpqenum(&["enumerate", "--n", "0"]).status.code(), Some(2));

    let o = mpqenum(&["enumerate", "--n", "3", "--out", "/nonexistent-dir/x.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

/// Children piped through `parent` and `canonize` give back the input.
#[test]
fn children_round_trip() {
    let g = stdout(&mpqenum(&["canonize", "1,2,1,3,4,3,5,2,5,4"])).trim().to_string();
    let kids = stdout(&mpqenum(&["children", &g]));
    assert!(!kids.is_empty());
    let parents = with_stdin(&["parent"], &kids);
    assert!(parents.status.success());
    let canon = with_stdin(&["canonize"], &stdout(&parents));
    for line in stdout(&canon).lines() {
        assert_eq!(line, g);
    }
    assert_eq!(stdout(&canon).lines().count(), kids.lines().count());
}
