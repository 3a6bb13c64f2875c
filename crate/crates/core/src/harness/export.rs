//! Report persistence.
//!
//! * JSON: the full [`ExperimentReport`] (wall-clock timings excluded).
//! * CSV traces: `iteration,run_seed,best_so_far`, one row per trace entry.
//! * CSV summary: `checkpoint,min,median,mean,std`, one row per checkpoint.
//! * Plot data: `iteration,median_best_so_far` for every iteration.
//!
//! Floats are written in shortest round-trip form.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{median, ExperimentReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Config(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::Writer::from_writer(create(path)?))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_json(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, report).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn read_json(path: &Path) -> Result<ExperimentReport> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_trace_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = csv_writer(path)?;
    let err = csv_err(path);
    w.write_record(["iteration", "run_seed", "best_so_far"]).map_err(&err)?;
    for run in &report.runs {
        let seed = run.seed.to_string();
        for &(it, best) in run.trace.entries() {
            w.write_record([it.to_string(), seed.clone(), best.to_string()])
                .map_err(&err)?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_summary_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = csv_writer(path)?;
    let err = csv_err(path);
    w.write_record(["checkpoint", "min", "median", "mean", "std"]).map_err(&err)?;
    for s in &report.checkpoints {
        w.write_record([
            s.checkpoint.to_string(),
            s.min.to_string(),
            s.median.to_string(),
            s.mean.to_string(),
            s.std.to_string(),
        ])
        .map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Sibling of a trace CSV that holds the checkpoint summary:
/// `out/run.csv` → `out/run_summary.csv`.
pub fn summary_path(trace_path: &Path) -> PathBuf {
    let stem = trace_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    trace_path.with_file_name(format!("{stem}_summary.csv"))
}

/// Writes `report` to `destination` and returns every file written.
/// CSV produces the trace file plus its summary sibling.
pub fn export(report: &ExperimentReport, format: ExportFormat, destination: &Path) -> Result<Vec<PathBuf>> {
    match format {
        ExportFormat::Json => {
            write_json(report, destination)?;
            Ok(vec![destination.to_path_buf()])
        }
        ExportFormat::Csv => {
            let summary = summary_path(destination);
            write_trace_csv(report, destination)?;
            write_summary_csv(report, &summary)?;
            Ok(vec![destination.to_path_buf(), summary])
        }
    }
}

/// `(iteration, median best-so-far)` for iterations `0..=max_iterations`.
pub fn plot_series(report: &ExperimentReport) -> Result<Vec<(usize, f64)>> {
    if report.runs.is_empty() {
        return Err(Error::Config("plot data needs at least one run".into()));
    }
    (0..=report.plan.algorithm.max_iterations())
        .map(|it| {
            let values = report
                .runs
                .iter()
                .map(|r| {
                    r.trace
                        .value_at(it)
                        .ok_or_else(|| Error::Invariant(format!("run {} has no entry at {it}", r.seed)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((it, median(&values)))
        })
        .collect()
}

pub fn emit_plot_data(report: &ExperimentReport, destination: &Path) -> Result<()> {
    let series = plot_series(report)?;
    let mut w = csv_writer(destination)?;
    let err = csv_err(destination);
    w.write_record(["iteration", "median_best_so_far"]).map_err(&err)?;
    for (it, m) in series {
        w.write_record([it.to_string(), m.to_string()]).map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(destination, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_sibling() {
        assert_eq!(summary_path(Path::new("out/run.csv")), PathBuf::from("out/run_summary.csv"));
        assert_eq!(summary_path(Path::new("x")), PathBuf::from("x_summary.csv"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<ExportFormat>().unwrap(), ExportFormat::Csv);
        assert_eq!("json".parse::<ExportFormat>().unwrap(), ExportFormat::Json);
        assert!("xml".parse::<ExportFormat>().is_err());
    }

    #[test]
    fn shortest_roundtrip_float_text() {
        for v in [0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, 0.0059] {
            assert_eq!(v.to_string().parse::<f64>().unwrap(), v);
        }
    }
}
