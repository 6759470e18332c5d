//! End-to-end runs of the `fertile-hc` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fertile-hc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn critical_text() {
    let o = run(&["critical", "--graph", "rod", "--k", "3"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("lambda_cr = 0.148148148148"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn solve_json_round_trip() {
    let o = run(&[
        "solve", "--graph", "loop", "--k", "3", "--lambda", "2", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graph"], "loop");
    assert_eq!(v["count"], 3);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 3);
    assert_eq!(
        sols.iter().filter(|s| s["branch"] == "symmetric").count(),
        1
    );
    // re-serialising and parsing again is lossless
    let again: serde_json::Value = serde_json::from_str(&v.to_string()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn rational_lambda_is_exact() {
    let o = run(&["solve", "--graph", "loop", "--k", "3", "--lambda", "32/27"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("count = 1"), "{text}");
    assert!(text.contains("z1 = 0.5, z2 = 0.5"), "{text}");
}

#[test]
fn sweep_csv_and_svg() {
    let args = [
        "sweep",
        "--graph",
        "rod",
        "--k",
        "3",
        "--lambda-min",
        "0.05",
        "--lambda-max",
        "1",
        "--steps",
        "20",
    ];
    let csv = run(&args);
    assert!(csv.status.success());
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,count,z1_sym,z1_low,z1_high"));
    assert_eq!(lines.count(), 20);

    let mut svg_args = args.to_vec();
    svg_args.extend(["--format", "svg"]);
    let svg = run(&svg_args);
    assert!(svg.status.success());
    assert!(stdout(&svg).starts_with("<svg") || stdout(&svg).starts_with("<?xml"));
}

#[test]
fn sweep_writes_to_file() {
    let dir = std::env::temp_dir().join(format!("fertile-hc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let o = run(&[
        "sweep",
        "--graph",
        "key",
        "--k",
        "2",
        "--lambda-min",
        "0.1",
        "--lambda-max",
        "2",
        "--steps",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_consistency_passes() {
    let o = run(&[
        "verify-consistency",
        "--graph",
        "whistle",
        "--k",
        "2",
        "--lambda",
        "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.trim_end().ends_with("PASS"), "{text}");
}

#[test]
fn convexity_report() {
    let o = run(&["convexity", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violations"], 0);
    assert_eq!(v["alpha_at_one"], 496);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["solve", "--graph", "loop", "--k", "3", "--lambda", "0"],
        vec!["solve", "--graph", "LOOP", "--k", "3", "--lambda", "1"],
        vec!["critical", "--graph", "key", "--k", "3"],
        vec![
            "verify-consistency",
            "--graph",
            "rod",
            "--k",
            "2",
            "--lambda",
            "1",
            "--depth",
            "1",
        ],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn repeated_runs_are_identical() {
    let args = [
        "solve", "--graph", "rod", "--k", "3", "--lambda", "0.2", "--format", "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
