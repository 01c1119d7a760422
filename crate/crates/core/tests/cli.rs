use std::path::Path;
use std::process::{Command, Output};

fn spline_ids(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spline-ids"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn simulate_then_experiment_on_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = spline_ids(&["simulate", "--seed", "42", "--out", "traffic.csv"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let csv = std::fs::read_to_string(dir.path().join("traffic.csv")).unwrap();
    assert_eq!(csv.lines().count(), 601);

    let o = spline_ids(
        &["experiment", "--data", "traffic.csv", "--format", "csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{o:?}");
    let from_csv = stdout(&o);
    assert_eq!(from_csv.lines().count(), 6);

    // same records simulated in-process give the same rows
    let o = spline_ids(&["experiment", "--seed", "42", "--format", "csv"], dir.path());
    assert_eq!(stdout(&o), from_csv);
}

#[test]
fn scenario_file_and_model_subset() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/default_scenario.json");
    let o = spline_ids(
        &[
            "experiment",
            "--scenario",
            scenario,
            "--models",
            "logistic,bspline",
            "--bspline-degree",
            "2",
            "--report",
            "r.txt",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(dir.path().join("r.txt")).unwrap();
    assert!(text.contains("Logistic Regression") && text.contains("B-Spline"));
    assert!(!text.contains("Cubic Spline"));
}

#[test]
fn curves_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let o = spline_ids(&["curves", "--grid", "50", "--out", "c.csv"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let c = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(c.lines().count(), 51);
}

#[test]
fn train_and_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    assert!(spline_ids(&["simulate", "--seed", "5", "--out", "d.csv"], dir.path())
        .status
        .success());
    let o = spline_ids(
        &["train", "--model", "cubic", "--data", "d.csv", "--save", "m.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("Cubic Spline"));
    let o = spline_ids(&["evaluate", "--load", "m.json", "--data", "d.csv"], dir.path());
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("N = 600"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // usage errors
    assert_eq!(spline_ids(&["bogus"], dir.path()).status.code(), Some(1));
    assert_eq!(
        spline_ids(&["experiment", "--models", "svm"], dir.path()).status.code(),
        Some(1)
    );
    assert_eq!(
        spline_ids(&["experiment", "--split-ratio", "1.5"], dir.path()).status.code(),
        Some(1)
    );
    assert_eq!(spline_ids(&["--help"], dir.path()).status.code(), Some(0));

    // data errors
    std::fs::write(dir.path().join("bad.csv"), "not,a,header\n").unwrap();
    assert_eq!(
        spline_ids(&["experiment", "--data", "bad.csv"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        spline_ids(&["experiment", "--data", "missing.csv"], dir.path()).status.code(),
        Some(2)
    );
    std::fs::write(dir.path().join("m.json"), "{\"format\": \"spline-ids-model\"").unwrap();
    assert!(spline_ids(&["simulate", "--out", "d.csv"], dir.path()).status.success());
    assert_eq!(
        spline_ids(&["evaluate", "--load", "m.json", "--data", "d.csv"], dir.path())
            .status
            .code(),
        Some(2)
    );
}
