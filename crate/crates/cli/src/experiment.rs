//! Running manifests and writing their output bundles.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use bspline_burgers::oracle::cn_fd_run;
use bspline_burgers::{run, ErrorReport, ProblemSpec};
use rayon::prelude::*;

use crate::config::{RunManifest, SweepManifest};
use crate::error::Result;
use crate::output::{
    create_dir, relative, summary_rows, summary_text, write_metadata, write_profile_csv,
    write_summary_csv, Metadata, RunMeta,
};
use crate::plot::emit_plot;

/// Scored nodal profile at one sample time.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// The requested sample time.
    pub time: f64,
    pub x: Vec<f64>,
    pub numeric: Vec<f64>,
    pub exact: Vec<f64>,
    pub report: ErrorReport,
}

impl Sample {
    /// `step_time` is where the solver actually is; it differs from `time`
    /// only by rounding.
    pub fn score(
        problem: &ProblemSpec,
        h: f64,
        time: f64,
        step_time: f64,
        numeric: Vec<f64>,
    ) -> Result<Self> {
        let x: Vec<f64> = (0..numeric.len())
            .map(|i| problem.a + i as f64 * h)
            .collect();
        let exact: Vec<f64> = x.iter().map(|&xi| problem.exact(xi, step_time)).collect();
        let report = ErrorReport::compute(time, &numeric, &exact, &x)?;
        Ok(Self {
            time,
            x,
            numeric,
            exact,
            report,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub manifest: RunManifest,
    pub samples: Vec<Sample>,
    /// Finite-difference reference at the same sample times, if requested.
    pub oracle: Vec<Sample>,
    pub elapsed: Duration,
}

/// Runs the solver (and the reference solver if asked) without writing
/// anything.
pub fn execute(m: &RunManifest) -> Result<RunOutcome> {
    let start = Instant::now();
    let profiles = run(&m.problem, &m.solver, &m.sample_times)?;
    let samples = profiles
        .into_iter()
        .zip(&m.sample_times)
        .map(|(p, &t)| Sample::score(&m.problem, m.solver.h, t, p.time, p.values))
        .collect::<Result<Vec<_>>>()?;

    let mut oracle = Vec::new();
    if m.oracle {
        let fd = cn_fd_run(&m.problem, &m.solver)?;
        for &t in &m.sample_times {
            let k = ((t - m.solver.t_start) / m.solver.dt).round() as usize;
            let p = &fd[k.min(fd.len() - 1)];
            oracle.push(Sample::score(
                &m.problem,
                m.solver.h,
                t,
                p.time,
                p.values.clone(),
            )?);
        }
    }
    Ok(RunOutcome {
        manifest: m.clone(),
        samples,
        oracle,
        elapsed: start.elapsed(),
    })
}

pub fn profile_name(prefix: &str, time: f64) -> String {
    format!("{prefix}_t{time}.csv")
}

/// Writes the per-run files (profiles, reference profiles, plot) into the
/// run's output directory. Returns the written paths and notes.
pub fn write_run_files(o: &RunOutcome) -> Result<(Vec<PathBuf>, Vec<String>)> {
    let m = &o.manifest;
    let dir = create_dir(&m.out)?;
    let mut files = Vec::new();
    let mut notes = Vec::new();
    for s in &o.samples {
        let path = dir.join(profile_name("profile", s.time));
        write_profile_csv(&path, s)?;
        files.push(path);
    }
    for s in &o.oracle {
        let path = dir.join(profile_name("oracle", s.time));
        write_profile_csv(&path, s)?;
        files.push(path);
    }
    if m.plots {
        let title = format!(
            "{} problem, nu = {}, h = {}, dt = {} ({} mode)",
            m.problem.kind, m.solver.viscosity, m.solver.h, m.solver.dt, m.solver.mode
        );
        let path = dir.join("plot.svg");
        if emit_plot(&title, &o.samples, &path)? {
            files.push(path);
        } else {
            notes.push(format!(
                "{}: plot omitted, no sample times",
                m.out.display()
            ));
        }
    }
    Ok((files, notes))
}

/// Everything written by one `solve` or `sweep`.
#[derive(Debug, Clone)]
pub struct OutputBundle {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub notes: Vec<String>,
    pub outcomes: Vec<RunOutcome>,
}

impl OutputBundle {
    pub fn metadata_path(&self) -> PathBuf {
        self.dir.join("metadata.json")
    }
}

fn finish(
    command: &str,
    dir: PathBuf,
    outcomes: Vec<RunOutcome>,
    mut files: Vec<PathBuf>,
    notes: Vec<String>,
    start: Instant,
) -> Result<OutputBundle> {
    create_dir(&dir)?;
    let rows = summary_rows(&outcomes);
    let txt = dir.join("summary.txt");
    std::fs::write(&txt, summary_text(&rows)).map_err(|e| crate::error::CliError::io(&txt, e))?;
    let csv = dir.join("summary.csv");
    write_summary_csv(&csv, &rows, &outcomes)?;
    files.push(txt);
    files.push(csv);

    let meta_path = dir.join("metadata.json");
    let meta = Metadata {
        tool: "burgers",
        version: env!("CARGO_PKG_VERSION"),
        solver_version: bspline_burgers::VERSION,
        command: command.to_string(),
        wall_time_s: start.elapsed().as_secs_f64(),
        files: files.iter().map(|p| relative(p, &dir)).collect(),
        notes: notes.clone(),
        runs: outcomes.iter().map(RunMeta::from_outcome).collect(),
    };
    write_metadata(&meta_path, &meta)?;
    files.push(meta_path);
    Ok(OutputBundle {
        dir,
        files,
        notes,
        outcomes,
    })
}

/// `solve`: one run, written to `m.out`.
pub fn run_experiment(m: &RunManifest) -> Result<OutputBundle> {
    let start = Instant::now();
    let outcome = execute(m)?;
    let (files, notes) = write_run_files(&outcome)?;
    finish("solve", m.out.clone(), vec![outcome], files, notes, start)
}

/// `sweep`: all runs in parallel, each in its own subdirectory, then one
/// summary for the whole set.
pub fn run_sweep(s: &SweepManifest) -> Result<OutputBundle> {
    let start = Instant::now();
    let results = s
        .runs
        .par_iter()
        .map(|m| {
            let o = execute(m)?;
            let (files, notes) = write_run_files(&o)?;
            Ok((o, files, notes))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut outcomes = Vec::new();
    let mut files = Vec::new();
    let mut notes = Vec::new();
    for (o, f, n) in results {
        outcomes.push(o);
        files.extend(f);
        notes.extend(n);
    }
    finish("sweep", s.out.clone(), outcomes, files, notes, start)
}
