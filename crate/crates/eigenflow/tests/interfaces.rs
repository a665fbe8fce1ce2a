//! End-to-end checks of the command line interface and its file formats.

use std::path::Path;
use std::process::{Command, Output};

use eigenflow::collisions::CollisionReport;
use eigenflow::io::{records_from_csv, records_to_csv, RECORDS_CSV_HEADER, TRACKS_CSV_HEADER};
use eigenflow::stats::TrialSummary;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigenflow"))
}

fn run_ok(args: &[&str], dir: &Path) -> Output {
    let out = bin()
        .args(args)
        .args(["--out-dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "expected success for {args:?}, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn collide_writes_records_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(
        &["collide", "--n", "4", "--seed", "3", "--m", "5"],
        dir.path(),
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("seed 3"), "summary line missing: {stdout}");

    let csv = std::fs::read_to_string(dir.path().join("records.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), RECORDS_CSV_HEADER);
    let rows = records_from_csv(&csv).unwrap();
    assert_eq!(rows.len(), csv.lines().count() - 1);
    assert!(!rows.is_empty(), "n=4 should have collisions");
    let rewritten = {
        let report: CollisionReport = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("report.json")).unwrap(),
        )
        .unwrap();
        assert_eq!(report.spec.n, 4);
        assert_eq!(report.total_localized, rows.len());
        records_to_csv(&report)
    };
    assert_eq!(rewritten, csv, "records.csv must round-trip byte for byte");
}

#[test]
fn report_flag_overrides_path() {
    let dir = tempfile::tempdir().unwrap();
    let custom = dir.path().join("nested").join("out.json");
    run_ok(
        &[
            "collide",
            "--n",
            "3",
            "--seed",
            "1",
            "--m",
            "4",
            "--report",
            custom.to_str().unwrap(),
        ],
        dir.path(),
    );
    let report: CollisionReport =
        serde_json::from_str(&std::fs::read_to_string(&custom).unwrap()).unwrap();
    assert_eq!(report.spec.seed, 1);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"n": 3, "seed": 7, "m": 4, "curve": "circle"}"#).unwrap();
    run_ok(
        &["collide", "--config", cfg.to_str().unwrap(), "--m", "5"],
        dir.path(),
    );
    let report: CollisionReport = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report.spec.seed, 7, "config seed should apply");
    assert_eq!(report.grid.m, 5, "flag should override config m");
}

#[test]
fn exit_codes() {
    // Invalid flag value: usage error, exit 2.
    let out = bin()
        .args(["collide", "--n", "4", "--ensemble", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "bad ensemble should exit 2");

    // Structurally invalid model (crossing needs odd n): config error, exit 2.
    let out = bin()
        .args(["collide", "--n", "4", "--curve", "crossing"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "even-n crossing should exit 2");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error:"), "stderr should explain: {stderr}");

    // Unknown config key: exit 2.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"n": 3, "typo_field": 1}"#).unwrap();
    let out = bin()
        .args(["collide", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "unknown config key should exit 2");
}

#[test]
fn tracks_svg_is_valid_xml_with_marks() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &[
            "tracks",
            "--n",
            "4",
            "--seed",
            "3",
            "--m",
            "5",
            "--s-window",
            "0.2:0.4:0.1",
        ],
        dir.path(),
    );

    let csv = std::fs::read_to_string(dir.path().join("tracks.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), TRACKS_CSV_HEADER);
    assert!(csv.lines().count() > 3 * 4, "3 stripes x 4 eigenvalues");

    let svg = std::fs::read_to_string(dir.path().join("tracks.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let polylines = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .count();
    assert!(polylines >= 3 * 4, "one polyline per eigenvalue per stripe");
    let titled_marks = doc
        .descendants()
        .filter(|n| n.has_tag_name("title"))
        .filter_map(|n| n.text())
        .filter(|t| t.contains("pair"))
        .count();
    assert!(titled_marks > 0, "collision marks should carry titles");
}

#[test]
fn stats_writes_summaries_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(
        &["stats", "--n", "3", "--m", "4", "--seeds", "0..6"],
        dir.path(),
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("6 trials"), "stdout: {stdout}");

    let jsonl = std::fs::read_to_string(dir.path().join("summaries.jsonl")).unwrap();
    let summaries: Vec<TrialSummary> = jsonl
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(summaries.len(), 6);
    assert!(summaries.iter().all(|s| s.n == 3 && s.error.is_none()));

    let hist = std::fs::read_to_string(dir.path().join("histogram.csv")).unwrap();
    assert!(hist.starts_with("bin_low,bin_high,count"));
    let total: usize = hist
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 6);
    assert!(dir.path().join("histogram.svg").exists());
}

#[test]
fn cli_determinism_across_parallelism() {
    let strip_time = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let mut reports = Vec::new();
    for par in ["1", "8"] {
        let dir = tempfile::tempdir().unwrap();
        run_ok(
            &[
                "collide",
                "--n",
                "5",
                "--seed",
                "2",
                "--m",
                "5",
                "--parallelism",
                par,
            ],
            dir.path(),
        );
        let raw = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
        reports.push(strip_time(serde_json::from_str(&raw).unwrap()));
    }
    assert_eq!(reports[0], reports[1], "reports must not depend on thread count");
}
