use std::path::Path;

use swarmopt::abc::AbcConfig;
use swarmopt::benchfns::FunctionRegistry;
use swarmopt::firefly::FaConfig;
use swarmopt::harness::{
    emit_plot_data, export, plot_series, read_json, run_experiment, run_experiment_with, summary_path,
    AlgorithmConfig, ExperimentPlan, ExperimentReport, ExportFormat,
};
use swarmopt::parallel::Execution;
use swarmopt::ObjectiveSpec;

fn small_plan(fa: bool, reps: usize) -> ExperimentPlan {
    let mut plan = if fa {
        let mut p = ExperimentPlan::fa_default("rastrigin", 2, 17).unwrap();
        p.algorithm = AlgorithmConfig::Fa(FaConfig::new(12, 25));
        p
    } else {
        let mut p = ExperimentPlan::abc_default("rastrigin", 2, 17).unwrap();
        p.algorithm = AlgorithmConfig::Abc(AbcConfig::for_dims(12, 2, 25));
        p
    };
    plan.checkpoints = vec![5, 10, 15, 20, 25];
    plan.repetitions = reps;
    plan
}

fn constant_report() -> ExperimentReport {
    let mut registry = FunctionRegistry::with_builtins();
    registry.register("flat", 1..=3, "constant 4.25", |d| ObjectiveSpec::new("flat", d, |_| 4.25));
    let mut plan = small_plan(false, 3);
    plan.objective = "flat".into();
    run_experiment_with(&plan, &registry, Execution::Sequential).unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let headers = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (headers, rows)
}

fn without_timing(mut r: ExperimentReport) -> ExperimentReport {
    r.total_wall_time = 0.0;
    for run in &mut r.runs {
        run.wall_time = 0.0;
    }
    r
}

#[test]
fn json_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for fa in [false, true] {
        let report = run_experiment(&small_plan(fa, 4)).unwrap();
        let path = dir.path().join(format!("r{fa}.json"));
        assert_eq!(export(&report, ExportFormat::Json, &path).unwrap(), vec![path.clone()]);
        let back = read_json(&path).unwrap();
        assert_eq!(back, without_timing(report.clone()));
        // Re-serializing gives the same bytes.
        assert_eq!(back.to_json().unwrap(), report.to_json().unwrap());
    }
}

#[test]
fn csv_layout_and_flat_trace() {
    let dir = tempfile::tempdir().unwrap();
    let report = constant_report();
    let path = dir.path().join("flat.csv");
    let written = export(&report, ExportFormat::Csv, &path).unwrap();
    assert_eq!(written, vec![path.clone(), summary_path(&path)]);

    let (headers, rows) = read_csv(&path);
    assert_eq!(headers, ["iteration", "run_seed", "best_so_far"]);
    assert_eq!(rows.len(), 3 * 26);
    assert!(rows.iter().all(|r| r[2] == "4.25"));

    let (headers, rows) = read_csv(&summary_path(&path));
    assert_eq!(headers, ["checkpoint", "min", "median", "mean", "std"]);
    assert_eq!(rows.len(), report.plan.checkpoints.len());
}

#[test]
fn csv_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_experiment(&small_plan(false, 5)).unwrap();
    let csv_path = dir.path().join("t.csv");
    let json_path = dir.path().join("t.json");
    export(&report, ExportFormat::Csv, &csv_path).unwrap();
    export(&report, ExportFormat::Json, &json_path).unwrap();
    let from_json = read_json(&json_path).unwrap();

    let (_, rows) = read_csv(&csv_path);
    let mut expected = Vec::new();
    for run in &from_json.runs {
        for &(it, v) in run.trace.entries() {
            expected.push((it, run.seed, v));
        }
    }
    let parsed: Vec<(usize, u64, f64)> = rows
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap()))
        .collect();
    assert_eq!(parsed, expected);

    let (_, rows) = read_csv(&summary_path(&csv_path));
    for (row, s) in rows.iter().zip(&from_json.checkpoints) {
        let vals: Vec<f64> = row[1..].iter().map(|v| v.parse().unwrap()).collect();
        assert_eq!(row[0].parse::<usize>().unwrap(), s.checkpoint);
        assert_eq!(vals, vec![s.min, s.median, s.mean, s.std]);
    }
}

#[test]
fn plot_data_matches_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_experiment(&small_plan(true, 5)).unwrap();
    let series = plot_series(&report).unwrap();
    assert_eq!(series.len(), 26);
    for s in &report.checkpoints {
        assert_eq!(series[s.checkpoint], (s.checkpoint, s.median));
    }

    let path = dir.path().join("plot.csv");
    emit_plot_data(&report, &path).unwrap();
    let (headers, rows) = read_csv(&path);
    assert_eq!(headers, ["iteration", "median_best_so_far"]);
    let parsed: Vec<(usize, f64)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap())).collect();
    assert_eq!(parsed, series);
}

#[test]
fn plot_data_single_run_and_constant() {
    let single = run_experiment(&small_plan(false, 1)).unwrap();
    assert_eq!(plot_series(&single).unwrap(), single.runs[0].trace.entries().to_vec());

    let flat = constant_report();
    assert!(plot_series(&flat).unwrap().iter().all(|&(_, v)| v == 4.25));
}

#[test]
fn io_errors_carry_path() {
    let report = constant_report();
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let bad = blocker.join("nested/out.json");
    let err = export(&report, ExportFormat::Json, &bad).unwrap_err().to_string();
    assert!(err.contains("file"), "{err}");
    let err = read_json(&dir.path().join("missing.json")).unwrap_err().to_string();
    assert!(err.contains("missing.json"), "{err}");
}
