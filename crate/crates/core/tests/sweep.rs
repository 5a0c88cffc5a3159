use std::f64::consts::PI;

use armdgf_core::scenario::ScenarioFile;
use armdgf_core::sweep::{
    compute_sweep, plot_script, rows_to_csv, run_sweep, OffsetAxis, SweepConfig, CSV_HEADER,
};
use armdgf_core::Error;

fn small() -> SweepConfig {
    SweepConfig {
        theta_values: vec![PI / 6.0, PI],
        phi_step: PI / 6.0,
        offsets_m: vec![0.0, 0.05, 0.1],
        ..SweepConfig::default()
    }
}

#[test]
fn csv_layout_and_order() {
    let loaded = ScenarioFile::reference().resolve().unwrap();
    let (rows, summary) = compute_sweep(&loaded, &small()).unwrap();
    assert_eq!(rows.len(), 2 * 3 * 13);
    assert_eq!(summary.rows, rows.len());
    let csv = rows_to_csv(&rows);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER);
    assert_eq!(CSV_HEADER.split(',').count(), 11);
    for line in lines {
        assert_eq!(line.split(',').count(), 11);
    }
    assert_eq!(rows[13].offset, 0.05);
    assert_eq!(rows[39].theta, PI);
    assert!(summary.max_db >= summary.min_db);
    assert_eq!(summary.trends.len(), 2);
}

#[test]
fn vertical_offsets_enter_the_body_below_the_sphere() {
    let loaded = ScenarioFile::reference().resolve().unwrap();
    let config = SweepConfig {
        offset_axis: OffsetAxis::Vertical,
        theta_values: vec![PI],
        offsets_m: vec![0.0, 0.04],
        ..small()
    };
    match compute_sweep(&loaded, &config).unwrap_err() {
        Error::AtGridPoint { offset, .. } => assert_eq!(offset, 0.04),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let loaded = ScenarioFile::reference().resolve().unwrap();
    for cfg in [
        SweepConfig { theta_values: vec![], ..small() },
        SweepConfig { theta_values: vec![4.0], ..small() },
        SweepConfig { phi_step: 0.0, ..small() },
        SweepConfig { offsets_m: vec![-0.01], ..small() },
    ] {
        assert!(matches!(compute_sweep(&loaded, &cfg), Err(Error::Invalid { .. })));
    }
}

#[test]
fn run_sweep_writes_reproducible_files() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("s.json");
    std::fs::write(&scenario, serde_json::to_string(&ScenarioFile::reference()).unwrap()).unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    run_sweep(&scenario, &small(), &a).unwrap();
    run_sweep(&scenario, &small(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let bad = run_sweep(&scenario, &small(), &dir.path().join("missing/x.csv")).unwrap_err();
    assert!(matches!(bad, Error::Io { .. }));
}

#[test]
fn plot_script_references_csv() {
    let script = plot_script("out.csv", &small());
    assert!(script.contains("out.csv"));
    assert!(script.contains("set datafile separator ','"));
}
