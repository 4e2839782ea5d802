use std::process::Command;

use parcolor::bench::parse_results_json;
use parcolor::coloring::parse_coloring;

fn parcolor() -> Command {
    Command::new(env!("CARGO_BIN_EXE_parcolor"))
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cycle.csv");
    let status = parcolor()
        .args([
            "bench",
            "--synthetic",
            "cycle:10:0",
            "--algo",
            "seq",
            "--reps",
            "3",
            "--verify",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("algorithm,p,mean_time_s,colors,rounds,speedup")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        (row[0], row[1], row[3], row[4], row[5]),
        ("seq", "1", "2", "", "")
    );
    assert!(lines.next().is_none());
}

#[test]
fn bench_writes_json_sweep() {
    let output = parcolor()
        .args([
            "bench",
            "--synthetic",
            "gnp:800,0.01:1",
            "--algo",
            "barrier",
            "--threads",
            "1,2,4",
            "--reps",
            "2",
            "--verify",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let results = parse_results_json(&output.stdout).unwrap();
    assert_eq!(
        results.iter().map(|r| r.p).collect::<Vec<_>>(),
        vec![1, 2, 4]
    );
    assert!(results.iter().all(|r| r.speedup.is_some()));
}

#[test]
fn color_writes_original_ids() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, "# test\n100 7\n7 3\n3 100\n42 7\n").unwrap();
    let out = dir.path().join("colors.txt");
    let trace = dir.path().join("trace.log");
    let status = parcolor()
        .args(["color", "--algo", "barrier", "--threads", "2", "--verify"])
        .arg("--input")
        .arg(&graph)
        .arg("--out")
        .arg(&out)
        .arg("--trace")
        .arg(&trace)
        .status()
        .unwrap();
    assert!(status.success());
    let entries = parse_coloring(std::fs::read(&out).unwrap().as_slice()).unwrap();
    assert_eq!(
        entries.iter().map(|e| e.0).collect::<Vec<_>>(),
        vec![3, 7, 42, 100]
    );
    let color = |id: u64| entries.iter().find(|e| e.0 == id).unwrap().1;
    for (a, b) in [(100, 7), (7, 3), (3, 100), (42, 7)] {
        assert_ne!(color(a), color(b));
    }
    let log = std::fs::read_to_string(&trace).unwrap();
    assert!(log.starts_with("round\tthread\twork\trecolor\n1\t0\t"));
}

#[test]
fn input_failures_exit_nonzero() {
    let status = parcolor()
        .args(["bench", "--input", "/does/not/exist.txt", "--algo", "seq"])
        .output()
        .unwrap();
    assert!(!status.status.success());
    assert!(String::from_utf8_lossy(&status.stderr).contains("/does/not/exist.txt"));

    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.txt");
    std::fs::write(&graph, "1 2\n3 x\n").unwrap();
    let output = parcolor()
        .args(["color"])
        .arg("--input")
        .arg(&graph)
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 2"));

    let output = parcolor()
        .args(["bench", "--synthetic", "gnp:10,2.0", "--algo", "fine"])
        .output()
        .unwrap();
    assert!(!output.status.success());

    let output = parcolor()
        .args([
            "bench",
            "--synthetic",
            "path:5",
            "--algo",
            "fine",
            "--format",
            "xml",
        ])
        .output()
        .unwrap();
    assert!(!output.status.success());
}
