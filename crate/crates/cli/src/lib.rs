//! Experiment runner for the `bspline-burgers` solver: parses flags and
//! config files, runs single configurations or sweeps, and writes profile
//! CSVs, error tables, SVG plots and run metadata.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod plot;

use std::io::Write;

use bspline_burgers::make_problem;

pub use config::{Cli, Command, RunArgs, RunManifest, Settings, SweepManifest};
pub use error::{CliError, Result};
pub use experiment::{execute, run_experiment, run_sweep, OutputBundle, RunOutcome, Sample};

/// Dispatches a parsed command line, writing the summary table to `out`.
pub fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<()> {
    let io = |e| CliError::io("<stdout>", e);
    match &cli.command {
        Command::Solve(args) => {
            let manifest = Settings::load(args)?.into_manifest()?;
            let bundle = run_experiment(&manifest)?;
            report(&bundle, out).map_err(io)
        }
        Command::Sweep(args) => {
            let sweep = Settings::load(args)?.into_sweep()?;
            let bundle = run_sweep(&sweep)?;
            report(&bundle, out).map_err(io)
        }
        Command::ListProblems => list_problems(out).map_err(io),
    }
}

fn report(bundle: &OutputBundle, out: &mut impl Write) -> std::io::Result<()> {
    let rows = output::summary_rows(&bundle.outcomes);
    write!(out, "{}", output::summary_text(&rows))?;
    for note in &bundle.notes {
        writeln!(out, "note: {note}")?;
    }
    writeln!(
        out,
        "wrote {} files to {}",
        bundle.files.len(),
        bundle.dir.display()
    )
}

pub fn list_problems(out: &mut impl Write) -> std::io::Result<()> {
    let rows = [
        ("shock", "decaying shock-like pulse, u = 0 at both ends"),
        (
            "front",
            "traveling front from 1 to 0.2 (alpha 0.4, mu 0.6, gamma 0.125)",
        ),
        ("constant", "u = value everywhere (default 1)"),
    ];
    writeln!(
        out,
        "{:<10} {:>8} {:>8}  description",
        "name", "t-start", "t-end"
    )?;
    for (name, text) in rows {
        let p = make_problem(name, config::DEFAULT_NU).expect("built-in problem");
        writeln!(
            out,
            "{:<10} {:>8} {:>8}  {}",
            name,
            p.t_start,
            p.default_t_end(),
            text
        )?;
    }
    Ok(())
}
