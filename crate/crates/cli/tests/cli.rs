//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shortcycle"))
}

fn tmp() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
}

fn demo_edges() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/demo.edges")
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("spawn");
    assert!(
        out.status.success(),
        "command failed: {:?}\nstdout: {}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn build_query_cycle_index() {
    let idx = tmp().join("demo-cycle.idx");
    let out = run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    assert!(stdout(&out).contains("built cycle index: n=10 m=13"));

    let out = run_ok(bin().args([
        "query",
        idx.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        "--vertex",
        "7",
    ]));
    assert!(stdout(&out).contains("7: 6 3"), "got: {}", stdout(&out));

    let out = run_ok(bin().args([
        "query",
        idx.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        "--all",
    ]));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    let take = |name: &str| {
        text.lines()
            .find(|l| l.starts_with(&format!("{name}: ")))
            .unwrap_or_else(|| panic!("no line for {name}: {text}"))
    };
    // Three 6-cycles share the chain 7 -> 8 -> 9 -> 10; the side branches
    // carry one or two of them, and vertices 3/6 only see a 7-cycle.
    assert!(take("1").contains(": 6 2"));
    assert!(take("2").contains(": 6 1"));
    assert!(take("3").contains(": 7 1"));
    assert!(take("4").contains(": 6 2"));
    assert!(take("5").contains(": 6 1"));
    assert!(take("6").contains(": 7 1"));
    for v in ["7", "8", "9", "10"] {
        assert!(take(v).contains(": 6 3"));
    }
}

#[test]
fn build_query_path_index() {
    let idx = tmp().join("demo-path.idx");
    run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "path",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let out = run_ok(bin().args([
        "query",
        idx.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        "--pair",
        "10",
        "8",
    ]));
    assert!(
        stdout(&out).contains("10 -> 8: 4 3"),
        "got: {}",
        stdout(&out)
    );

    let out = run_ok(bin().args([
        "query",
        idx.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        "--vertex",
        "7",
    ]));
    assert!(stdout(&out).contains("7: 6 3"));
}

#[test]
fn unknown_vertex_fails() {
    let idx = tmp().join("demo-cycle2.idx");
    run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let out = bin()
        .args([
            "query",
            idx.to_str().unwrap(),
            demo_edges().to_str().unwrap(),
            "--vertex",
            "99",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not present"));
}

#[test]
fn update_workload_round_trip() {
    let idx = tmp().join("demo-upd.idx");
    let patched = tmp().join("demo-upd2.idx");
    run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let workload = tmp().join("demo.workload");
    std::fs::write(&workload, "- 7 8\n+ 7 8\n- 9 10\n+ 9 10\n").unwrap();
    let out = run_ok(bin().args([
        "update",
        idx.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        workload.to_str().unwrap(),
        "--strategy",
        "minimality",
        "--out",
        patched.to_str().unwrap(),
    ]));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "one stats line per op: {text}");
    assert!(text.contains("deleted="));

    // Removing and reinserting the same edges leaves answers intact.
    let out = run_ok(bin().args([
        "query",
        patched.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        "--vertex",
        "7",
    ]));
    assert!(stdout(&out).contains("7: 6 3"));
}

#[test]
fn update_works_on_path_indexes_too() {
    let idx = tmp().join("demo-path-upd.idx");
    let patched = tmp().join("demo-path-upd2.idx");
    run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "path",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let workload = tmp().join("path.workload");
    std::fs::write(&workload, "- 9 10\n+ 9 10\n").unwrap();
    run_ok(bin().args([
        "update",
        idx.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        workload.to_str().unwrap(),
        "--strategy",
        "minimality",
        "--out",
        patched.to_str().unwrap(),
    ]));
    let out = run_ok(bin().args([
        "query",
        patched.to_str().unwrap(),
        demo_edges().to_str().unwrap(),
        "--pair",
        "10",
        "8",
    ]));
    assert!(stdout(&out).contains("10 -> 8: 4 3"));
}

#[test]
fn malformed_workload_reports_line() {
    let idx = tmp().join("demo-bad.idx");
    run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let workload = tmp().join("bad.workload");
    std::fs::write(&workload, "- 7 8\nnonsense\n").unwrap();
    let out = bin()
        .args([
            "update",
            idx.to_str().unwrap(),
            demo_edges().to_str().unwrap(),
            workload.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn bench_emits_csv() {
    let out = run_ok(bin().args([
        "bench",
        demo_edges().to_str().unwrap(),
        "--queries",
        "4",
        "--seed",
        "7",
    ]));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "cluster,min_degree_lo,min_degree_hi,method,queries,mean_us,p99_us"
    );
    assert!(lines.count() > 0);

    let out = run_ok(bin().args(["bench", demo_edges().to_str().unwrap(), "--queries", "0"]));
    assert_eq!(stdout(&out).lines().count(), 1, "header only");
}

#[test]
fn mismatched_graph_and_index_rejected() {
    let idx = tmp().join("demo-mismatch.idx");
    run_ok(bin().args([
        "build",
        demo_edges().to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let other = tmp().join("other.edges");
    std::fs::write(&other, "0 1\n1 2\n").unwrap();
    let out = bin()
        .args([
            "query",
            idx.to_str().unwrap(),
            other.to_str().unwrap(),
            "--vertex",
            "1",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("wrong graph"));
}

#[test]
fn empty_graph_builds_empty_index() {
    let edges = tmp().join("empty.edges");
    std::fs::write(&edges, "# nothing here\n").unwrap();
    let idx = tmp().join("empty.idx");
    let out = run_ok(bin().args([
        "build",
        edges.to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    assert!(stdout(&out).contains("n=0 m=0"));
    assert!(idx.exists());
}

#[test]
fn gen_build_query_pipeline() {
    let edges = tmp().join("gen.edges");
    run_ok(bin().args([
        "gen",
        "--model",
        "erdos",
        "--n",
        "50",
        "--m",
        "150",
        "--seed",
        "3",
        "--out",
        edges.to_str().unwrap(),
    ]));
    let idx = tmp().join("gen.idx");
    run_ok(bin().args([
        "build",
        edges.to_str().unwrap(),
        "--mode",
        "cycle",
        "--out",
        idx.to_str().unwrap(),
    ]));
    let out = run_ok(bin().args([
        "query",
        idx.to_str().unwrap(),
        edges.to_str().unwrap(),
        "--all",
        "--min-cycle-len",
        "2",
    ]));
    assert_eq!(stdout(&out).lines().count(), 50);

    // Same seed, same bytes.
    let edges2 = tmp().join("gen2.edges");
    run_ok(bin().args([
        "gen",
        "--model",
        "erdos",
        "--n",
        "50",
        "--m",
        "150",
        "--seed",
        "3",
        "--out",
        edges2.to_str().unwrap(),
    ]));
    assert_eq!(
        std::fs::read(&edges).unwrap(),
        std::fs::read(&edges2).unwrap()
    );
}
