//! Command-line flags, config files and the validated run manifests built
//! from them.

use std::path::{Path, PathBuf};

use bspline_burgers::problems::{FrontParams, ProblemKind};
use bspline_burgers::{InitStrategy, InnerUpdate, L2Weighting, Mode, ProblemSpec, SolverConfig};
use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "burgers",
    version,
    about = "Space-time B-spline solver for the viscous Burgers' equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one configuration and write profiles, errors and plots.
    Solve(RunArgs),
    /// Run a grid of viscosities and step sizes and write one error table.
    Sweep(RunArgs),
    /// List the built-in problems.
    ListProblems,
}

/// Flags shared by `solve` and `sweep`. Every flag is optional so that a
/// config file can supply it; flags win over file keys.
#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// Flat TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// shock, front or constant.
    #[arg(long)]
    pub problem: Option<String>,
    /// Viscosity; `sweep` accepts a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub nu: Vec<f64>,
    /// Space step; `sweep` accepts a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<f64>,
    /// Time step (defaults to h).
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "t-start")]
    pub t_start: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// summed or direct.
    #[arg(long)]
    pub mode: Option<String>,
    /// pde-derivative or symmetric.
    #[arg(long)]
    pub init: Option<String>,
    /// midpoint or picard.
    #[arg(long = "inner-update")]
    pub inner_update: Option<String>,
    #[arg(long = "inner-iters")]
    pub inner_iters: Option<usize>,
    /// unweighted or h-weighted.
    #[arg(long = "l2-weighting")]
    pub l2_weighting: Option<String>,
    /// Comma-separated step times; an empty value records nothing.
    #[arg(long = "sample-times")]
    pub sample_times: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also run the finite-difference reference solver.
    #[arg(long)]
    pub oracle: bool,
    /// Write SVG plots.
    #[arg(long)]
    pub plots: bool,
    /// Front parameters.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Value of the constant problem.
    #[arg(long)]
    pub value: Option<f64>,
}

/// Unvalidated settings from one source (file or flags).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub problem: Option<String>,
    pub nu: Option<Vec<f64>>,
    pub h: Option<Vec<f64>>,
    pub dt: Option<f64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub mode: Option<String>,
    pub init: Option<String>,
    pub inner_update: Option<String>,
    pub inner_iters: Option<usize>,
    pub l2_weighting: Option<String>,
    pub sample_times: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub oracle: Option<bool>,
    pub plots: Option<bool>,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub gamma: Option<f64>,
    pub value: Option<f64>,
}

pub const KEYS: &[&str] = &[
    "problem",
    "nu",
    "h",
    "dt",
    "t-start",
    "t-end",
    "mode",
    "init",
    "inner-update",
    "inner-iters",
    "l2-weighting",
    "sample-times",
    "out",
    "oracle",
    "plots",
    "alpha",
    "mu",
    "gamma",
    "value",
];

fn number(key: &str, v: &toml::Value) -> Result<f64> {
    match v {
        toml::Value::Float(f) => Ok(*f),
        toml::Value::Integer(i) => Ok(*i as f64),
        other => Err(CliError::config(
            key,
            format!("expected a number, got {}", other.type_str()),
        )),
    }
}

fn numbers(key: &str, v: &toml::Value) -> Result<Vec<f64>> {
    match v {
        toml::Value::Array(items) => items.iter().map(|x| number(key, x)).collect(),
        scalar => Ok(vec![number(key, scalar)?]),
    }
}

fn string(key: &str, v: &toml::Value) -> Result<String> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| CliError::config(key, format!("expected a string, got {}", v.type_str())))
}

fn boolean(key: &str, v: &toml::Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| {
        CliError::config(key, format!("expected true or false, got {}", v.type_str()))
    })
}

fn count(key: &str, v: &toml::Value) -> Result<usize> {
    match v {
        toml::Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        _ => Err(CliError::config(key, "expected a non-negative integer")),
    }
}

/// Parses `"1.7, 2.5,3.25"`; the empty string is the empty list.
pub fn parse_times(text: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| {
                CliError::config("sample-times", format!("`{}` is not a number", s.trim()))
            })
        })
        .collect()
}

impl Settings {
    /// Reads a flat TOML document. Every key must be one of [`KEYS`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| CliError::config("config", e.message().to_string()))?;
        let mut s = Settings::default();
        for (key, v) in &table {
            let k = key.as_str();
            match k {
                "problem" => s.problem = Some(string(k, v)?),
                "nu" => s.nu = Some(numbers(k, v)?),
                "h" => s.h = Some(numbers(k, v)?),
                "dt" => s.dt = Some(number(k, v)?),
                "t-start" => s.t_start = Some(number(k, v)?),
                "t-end" => s.t_end = Some(number(k, v)?),
                "mode" => s.mode = Some(string(k, v)?),
                "init" => s.init = Some(string(k, v)?),
                "inner-update" => s.inner_update = Some(string(k, v)?),
                "inner-iters" => s.inner_iters = Some(count(k, v)?),
                "l2-weighting" => s.l2_weighting = Some(string(k, v)?),
                "sample-times" => {
                    s.sample_times = Some(match v {
                        toml::Value::String(text) => parse_times(text)?,
                        other => numbers(k, other)?,
                    })
                }
                "out" => s.out = Some(PathBuf::from(string(k, v)?)),
                "oracle" => s.oracle = Some(boolean(k, v)?),
                "plots" => s.plots = Some(boolean(k, v)?),
                "alpha" => s.alpha = Some(number(k, v)?),
                "mu" => s.mu = Some(number(k, v)?),
                "gamma" => s.gamma = Some(number(k, v)?),
                "value" => s.value = Some(number(k, v)?),
                unknown => {
                    return Err(CliError::config(
                        unknown,
                        format!("unknown key (expected one of {})", KEYS.join(", ")),
                    ))
                }
            }
        }
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::config("config", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_toml(&text)
    }

    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let list = |v: &Vec<f64>| (!v.is_empty()).then(|| v.clone());
        Ok(Settings {
            problem: args.problem.clone(),
            nu: list(&args.nu),
            h: list(&args.h),
            dt: args.dt,
            t_start: args.t_start,
            t_end: args.t_end,
            mode: args.mode.clone(),
            init: args.init.clone(),
            inner_update: args.inner_update.clone(),
            inner_iters: args.inner_iters,
            l2_weighting: args.l2_weighting.clone(),
            sample_times: args.sample_times.as_deref().map(parse_times).transpose()?,
            out: args.out.clone(),
            oracle: args.oracle.then_some(true),
            plots: args.plots.then_some(true),
            alpha: args.alpha,
            mu: args.mu,
            gamma: args.gamma,
            value: args.value,
        })
    }

    /// Config file (if any) overlaid with the flags.
    pub fn load(args: &RunArgs) -> Result<Self> {
        let flags = Self::from_args(args)?;
        match &args.config {
            Some(path) => Ok(Self::from_file(path)?.overlay(flags)),
            None => Ok(flags),
        }
    }

    /// Keys set in `top` replace those in `self`.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            problem: top.problem.or(self.problem),
            nu: top.nu.or(self.nu),
            h: top.h.or(self.h),
            dt: top.dt.or(self.dt),
            t_start: top.t_start.or(self.t_start),
            t_end: top.t_end.or(self.t_end),
            mode: top.mode.or(self.mode),
            init: top.init.or(self.init),
            inner_update: top.inner_update.or(self.inner_update),
            inner_iters: top.inner_iters.or(self.inner_iters),
            l2_weighting: top.l2_weighting.or(self.l2_weighting),
            sample_times: top.sample_times.or(self.sample_times),
            out: top.out.or(self.out),
            oracle: top.oracle.or(self.oracle),
            plots: top.plots.or(self.plots),
            alpha: top.alpha.or(self.alpha),
            mu: top.mu.or(self.mu),
            gamma: top.gamma.or(self.gamma),
            value: top.value.or(self.value),
        }
    }

    fn problem_kind(&self) -> Result<ProblemKind> {
        let name = self
            .problem
            .as_deref()
            .ok_or_else(|| CliError::config("problem", "required (shock, front or constant)"))?;
        let kind: ProblemKind = name.parse()?;
        let front_keys = [
            ("alpha", self.alpha),
            ("mu", self.mu),
            ("gamma", self.gamma),
        ];
        match kind {
            ProblemKind::Front(defaults) => Ok(ProblemKind::Front(FrontParams {
                alpha: self.alpha.unwrap_or(defaults.alpha),
                mu: self.mu.unwrap_or(defaults.mu),
                gamma: self.gamma.unwrap_or(defaults.gamma),
            })),
            other => {
                if let Some((key, _)) = front_keys.iter().find(|(_, v)| v.is_some()) {
                    return Err(CliError::config(
                        *key,
                        format!("only applies to the front problem, not {name}"),
                    ));
                }
                match other {
                    ProblemKind::Constant(c) => Ok(ProblemKind::Constant(self.value.unwrap_or(c))),
                    _ if self.value.is_some() => Err(CliError::config(
                        "value",
                        "only applies to the constant problem",
                    )),
                    k => Ok(k),
                }
            }
        }
    }

    fn single(key: &str, list: &Option<Vec<f64>>, default: f64) -> Result<f64> {
        match list.as_deref() {
            None => Ok(default),
            Some([v]) => Ok(*v),
            Some(_) => Err(CliError::config(
                key,
                "takes a single value here (lists are for sweep)",
            )),
        }
    }

    /// Validated manifest for one run.
    pub fn into_manifest(self) -> Result<RunManifest> {
        let nu = Self::single("nu", &self.nu, DEFAULT_NU)?;
        let h = Self::single("h", &self.h, DEFAULT_H)?;
        let kind = self.problem_kind()?;
        self.manifest_for(
            kind,
            nu,
            h,
            self.out.clone().unwrap_or_else(|| PathBuf::from("out")),
        )
    }

    /// Validated manifests for every `(nu, h)` pair, each writing into its
    /// own subdirectory of the output directory.
    pub fn into_sweep(self) -> Result<SweepManifest> {
        let kind = self.problem_kind()?;
        let nus = self.nu.clone().unwrap_or_else(|| match kind {
            ProblemKind::Shock => vec![0.01, 0.005],
            _ => vec![0.01],
        });
        let hs = self.h.clone().unwrap_or_else(|| vec![0.01, 0.005, 0.001]);
        let out = self.out.clone().unwrap_or_else(|| PathBuf::from("out"));
        let mut runs = Vec::new();
        for &nu in &nus {
            for &h in &hs {
                let dir = out.join(run_tag(nu, h));
                runs.push(self.manifest_for(kind, nu, h, dir)?);
            }
        }
        Ok(SweepManifest { out, runs })
    }

    fn manifest_for(
        &self,
        kind: ProblemKind,
        nu: f64,
        h: f64,
        out: PathBuf,
    ) -> Result<RunManifest> {
        let mut problem = ProblemSpec::new(kind, nu)?;
        if let Some(t0) = self.t_start {
            if matches!(kind, ProblemKind::Shock) && t0 < 1.0 {
                return Err(CliError::config(
                    "t-start",
                    "the shock solution is defined for t >= 1",
                ));
            }
            problem.t_start = t0;
        }
        let t_end = self.t_end.unwrap_or_else(|| problem.default_t_end());
        let mut solver = SolverConfig::for_problem(&problem, h, self.dt.unwrap_or(h), t_end);
        if let Some(m) = &self.mode {
            solver.mode = m.parse::<Mode>()?;
        }
        if let Some(i) = &self.init {
            solver.init = i.parse::<InitStrategy>()?;
        }
        if let Some(u) = &self.inner_update {
            solver.inner_update = u.parse::<InnerUpdate>()?;
        }
        if let Some(n) = self.inner_iters {
            solver.inner_iterations = n;
        }
        if let Some(w) = &self.l2_weighting {
            solver.l2_weighting = w.parse::<L2Weighting>()?;
        }
        solver.validate()?;

        let sample_times = self.sample_times.clone().unwrap_or_else(|| vec![t_end]);
        if sample_times.windows(2).any(|w| w[1] < w[0]) {
            return Err(CliError::config("sample-times", "must be sorted"));
        }
        if let Some(t) = sample_times
            .iter()
            .find(|&&t| !(t >= solver.t_start - 1e-12 && t <= solver.t_end + 1e-12))
        {
            return Err(CliError::config(
                "sample-times",
                format!("{t} outside [{}, {}]", solver.t_start, solver.t_end),
            ));
        }
        Ok(RunManifest {
            problem,
            solver,
            sample_times,
            out,
            oracle: self.oracle.unwrap_or(false),
            plots: self.plots.unwrap_or(false),
        })
    }
}

pub const DEFAULT_NU: f64 = 0.01;
pub const DEFAULT_H: f64 = 0.01;

/// Directory name of one sweep entry, e.g. `nu0.01_h0.005`.
pub fn run_tag(nu: f64, h: f64) -> String {
    format!("nu{nu}_h{h}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub problem: ProblemSpec,
    pub solver: SolverConfig,
    pub sample_times: Vec<f64>,
    pub out: PathBuf,
    pub oracle: bool,
    pub plots: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepManifest {
    pub out: PathBuf,
    pub runs: Vec<RunManifest>,
}
