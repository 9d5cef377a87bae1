use std::process::{Command, Output};

use bigrade_core::survey::{CertifyCell, CohomologyCell, Report};

fn bigrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigrade"))
        .args(args)
        .env_remove("BIGRADE_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn certify_exit_codes() {
    let ok = bigrade(&["certify", "--a", "2", "--b", "2", "--r", "0", "--t", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: Report<CertifyCell> = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(report.cells[0].rank, Some(3));

    let usage = bigrade(&["certify", "--a", "2", "--b", "2", "--r", "0", "--t", "1"]);
    assert_eq!(usage.status.code(), Some(64));
    assert_eq!(bigrade(&["certify", "--a", "2"]).status.code(), Some(64));
    assert_eq!(bigrade(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        bigrade(&["certify", "--a", "2", "--b", "2", "--r", "0", "--t", "2", "--prime", "91"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(bigrade(&["--help"]).status.code(), Some(0));
}

#[test]
fn scan_is_byte_identical_across_runs_and_widths() {
    let args = |jobs: &'static str| {
        vec![
            "scan", "--a", "2:3", "--b", "2:3", "--r", "0:2", "--t", "b:b+2", "--seed", "9", "--jobs", jobs,
        ]
    };
    let one = bigrade(&args("1"));
    let again = bigrade(&args("1"));
    let wide = bigrade(&args("3"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, again.stdout);
    let a: Report<CertifyCell> = serde_json::from_str(&stdout(&one)).unwrap();
    let b: Report<CertifyCell> = serde_json::from_str(&stdout(&wide)).unwrap();
    assert_eq!(a.cells, b.cells);
    assert_eq!(serde_json::to_string_pretty(&a).unwrap() + "\n", stdout(&one));
}

#[test]
fn empty_scan() {
    let o = bigrade(&[
        "scan", "--a", "3:2", "--b", "2", "--r", "0", "--t", "2", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = bigrade(&[
        "scan",
        "--a",
        "2",
        "--b",
        "2",
        "--r",
        "0:1",
        "--t",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,r,t,prime,seed,rank,target,verdict,ms"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn prime_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bigrade"))
        .args([
            "certify", "--a", "1", "--b", "1", "--r", "0", "--t", "1", "--format", "csv",
        ])
        .env("BIGRADE_PRIME", "101")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("1,1,0,1,101,"));
}

#[test]
fn cohomology_and_matrix_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.mtx");
    let o = bigrade(&[
        "cohomology",
        "--a",
        "2",
        "--b",
        "2",
        "--h",
        "3",
        "--k",
        "-3",
        "--curve",
        "grid",
        "--export-matrix",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Report<CohomologyCell> = serde_json::from_str(&stdout(&o)).unwrap();
    let cell = &report.cells[0];
    assert_eq!((cell.result.h0, cell.result.h1), (0, 0));
    assert_eq!(cell.classification.kind.to_string(), "caseB(m=2)");

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('%') || l.starts_with("%%"));
    assert_eq!(lines.next(), Some("%%MatrixMarket matrix coordinate integer general"));
    let dims: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(&dims[..2], &[8, 8]);
    assert_eq!(lines.count(), dims[2]);

    let degenerate = bigrade(&[
        "cohomology",
        "--a",
        "2",
        "--b",
        "2",
        "--h",
        "3",
        "--k",
        "-3",
        "--curve",
        "line-degenerate",
    ]);
    let report: Report<CohomologyCell> = serde_json::from_str(&stdout(&degenerate)).unwrap();
    assert!(report.cells[0].result.h0 * report.cells[0].result.h1 > 0);
}

#[test]
fn reduce_grid_curve_and_verify_z() {
    let o = bigrade(&[
        "reduce", "--a", "2", "--b", "2", "--h", "3", "--k", "-3", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("caseB(m=2)"));

    let o = bigrade(&[
        "grid-curve",
        "--a",
        "3",
        "--b",
        "3",
        "--h",
        "5",
        "--k",
        "-4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(row.contains(",true,true,"), "{row}");

    let o = bigrade(&["verify-z", "--a", "5", "--b", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bigrade(&["verify-z", "--a", "3", "--b", "3", "--alpha", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(64));
}
