//! Profile CSVs, summary tables and run metadata.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bspline_burgers::ErrorReport;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::experiment::{RunOutcome, Sample};

pub const PROFILE_HEADER: [&str; 4] = ["x", "u_numeric", "u_exact", "abs_err"];

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    let source = match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{other:?}")),
    };
    CliError::io(path, source)
}

/// Writes `x,u_numeric,u_exact,abs_err`. Values use the shortest text that
/// parses back to the same `f64`.
pub fn write_profile_csv(path: &Path, sample: &Sample) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(PROFILE_HEADER)
        .map_err(|e| csv_error(path, e))?;
    for ((x, u), ex) in sample.x.iter().zip(&sample.numeric).zip(&sample.exact) {
        let rec = [
            x.to_string(),
            u.to_string(),
            ex.to_string(),
            (u - ex).abs().to_string(),
        ];
        w.write_record(&rec).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Columns of a profile CSV.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProfileTable {
    pub x: Vec<f64>,
    pub numeric: Vec<f64>,
    pub exact: Vec<f64>,
    pub abs_err: Vec<f64>,
}

pub fn read_profile_csv(path: &Path) -> Result<ProfileTable> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let header = r.headers().map_err(|e| csv_error(path, e))?.clone();
    if header.iter().ne(PROFILE_HEADER) {
        return Err(CliError::io(
            path,
            std::io::Error::new(std::io::ErrorKind::InvalidData, "unexpected header"),
        ));
    }
    let mut t = ProfileTable::default();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let mut vals = [0.0; 4];
        for (v, field) in vals.iter_mut().zip(rec.iter()) {
            *v = field.parse().map_err(|_| {
                CliError::io(
                    path,
                    std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("bad number `{field}`"),
                    ),
                )
            })?;
        }
        t.x.push(vals[0]);
        t.numeric.push(vals[1]);
        t.exact.push(vals[2]);
        t.abs_err.push(vals[3]);
    }
    Ok(t)
}

/// One line of the error table.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub problem: String,
    pub solver: &'static str,
    pub mode: String,
    pub nu: f64,
    pub h: f64,
    pub dt: f64,
    pub report: ErrorReport,
}

pub fn summary_rows(outcomes: &[RunOutcome]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for o in outcomes {
        let m = &o.manifest;
        let row = |solver, s: &Sample| SummaryRow {
            problem: m.problem.kind.name().to_string(),
            solver,
            mode: m.solver.mode.name().to_string(),
            nu: m.solver.viscosity,
            h: m.solver.h,
            dt: m.solver.dt,
            report: s.report,
        };
        rows.extend(o.samples.iter().map(|s| row("spline", s)));
        rows.extend(o.oracle.iter().map(|s| row("fd", s)));
    }
    rows
}

pub fn summary_text(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Errors and peak values");
    let _ = writeln!(out, "L2 = sqrt(sum e_i^2), L2(h) = sqrt(h sum e_i^2)");
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<9} {:<7} {:<7} {:>8} {:>8} {:>8} {:>8} {:>12} {:>12} {:>12} {:>10} {:>8}",
        "problem", "solver", "mode", "nu", "h", "dt", "t", "Linf", "L2", "L2(h)", "Peak", "x_peak"
    );
    for r in rows {
        let e = &r.report;
        let _ = writeln!(
            out,
            "{:<9} {:<7} {:<7} {:>8} {:>8} {:>8} {:>8} {:>12.4e} {:>12.4e} {:>12.4e} {:>10.4} {:>8.4}",
            r.problem,
            r.solver,
            r.mode,
            r.nu,
            r.h,
            r.dt,
            e.time,
            e.linf,
            e.l2_unweighted,
            e.l2_h_weighted,
            e.peak_value,
            e.peak_location
        );
    }
    out
}

pub const SUMMARY_HEADER: [&str; 13] = [
    "problem",
    "solver",
    "mode",
    "nu",
    "h",
    "dt",
    "t",
    "linf",
    "l2",
    "l2_h",
    "peak",
    "x_peak",
    "l2_selected",
];

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow], outcomes: &[RunOutcome]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(SUMMARY_HEADER)
        .map_err(|e| csv_error(path, e))?;
    let weighting = outcomes
        .first()
        .map(|o| o.manifest.solver.l2_weighting)
        .unwrap_or_default();
    for r in rows {
        let e = &r.report;
        let rec = [
            r.problem.clone(),
            r.solver.to_string(),
            r.mode.clone(),
            r.nu.to_string(),
            r.h.to_string(),
            r.dt.to_string(),
            e.time.to_string(),
            e.linf.to_string(),
            e.l2_unweighted.to_string(),
            e.l2_h_weighted.to_string(),
            e.peak_value.to_string(),
            e.peak_location.to_string(),
            e.l2(weighting).to_string(),
        ];
        w.write_record(&rec).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, Serialize)]
pub struct RunMeta {
    pub problem: String,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub gamma: Option<f64>,
    pub value: Option<f64>,
    pub nu: f64,
    pub h: f64,
    pub dt: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub mode: String,
    pub init: String,
    pub inner_update: String,
    pub inner_iters: usize,
    pub l2_weighting: String,
    pub sample_times: Vec<f64>,
    pub oracle: bool,
    pub plots: bool,
    pub out: String,
    pub wall_time_s: f64,
}

impl RunMeta {
    pub fn from_outcome(o: &RunOutcome) -> Self {
        use bspline_burgers::ProblemKind;
        let m = &o.manifest;
        let (mut alpha, mut mu, mut gamma, mut value) = (None, None, None, None);
        match m.problem.kind {
            ProblemKind::Front(p) => {
                (alpha, mu, gamma) = (Some(p.alpha), Some(p.mu), Some(p.gamma))
            }
            ProblemKind::Constant(c) => value = Some(c),
            ProblemKind::Shock => {}
        }
        Self {
            problem: m.problem.kind.name().to_string(),
            alpha,
            mu,
            gamma,
            value,
            nu: m.solver.viscosity,
            h: m.solver.h,
            dt: m.solver.dt,
            t_start: m.solver.t_start,
            t_end: m.solver.t_end,
            mode: m.solver.mode.to_string(),
            init: m.solver.init.to_string(),
            inner_update: m.solver.inner_update.to_string(),
            inner_iters: m.solver.inner_iterations,
            l2_weighting: m.solver.l2_weighting.to_string(),
            sample_times: m.sample_times.clone(),
            oracle: m.oracle,
            plots: m.plots,
            out: m.out.display().to_string(),
            wall_time_s: o.elapsed.as_secs_f64(),
        }
    }
}

/// Contents of `metadata.json`. File paths are relative to the output
/// directory.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub solver_version: &'static str,
    pub command: String,
    pub wall_time_s: f64,
    pub files: Vec<String>,
    pub notes: Vec<String>,
    pub runs: Vec<RunMeta>,
}

pub fn write_metadata(path: &Path, meta: &Metadata) -> Result<()> {
    let text = serde_json::to_string_pretty(meta).map_err(|e| {
        CliError::io(
            path,
            std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        )
    })?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

/// `path` relative to `base` when possible.
pub fn relative(path: &Path, base: &Path) -> String {
    path.strip_prefix(base)
        .unwrap_or(path)
        .display()
        .to_string()
}

pub fn create_dir(dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    Ok(dir.to_path_buf())
}
