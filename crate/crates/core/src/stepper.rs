//! Time stepping with quadratic B-splines in time and cubic B-splines in
//! space.
//!
//! The solution is expanded as `U(x, t) = Σ_j δ^j(x) B^j(t)` with quadratic
//! `B^j`, so at the knots `U^j = δ^{j-1} + δ^j` and
//! `U_t^j = (2/Δt)(δ^j − δ^{j-1})`. Substituting into
//! `u_t + u u_x − ν u_xx = 0` gives, for each new level `δ^{j+1}`,
//!
//! ```text
//! (2/Δt)(δ^{j+1} − δ^j) + (δ^j + δ^{j+1})(δ_x^j + δ_x^{j+1}) − ν(δ_xx^j + δ_xx^{j+1}) = 0
//! ```
//!
//! Each `δ^j` is a cubic-spline expansion, and collocating at every node
//! `x_0 ..= x_m` gives one row per node in `σ_{i-1}, σ_i, σ_{i+1}`. Only the
//! `δ^{j+1} δ_x^{j+1}` product is nonlinear; its `δ_x^{j+1}` factor is taken
//! from a lagged estimate that is refreshed between inner passes.

use std::fmt;
use std::str::FromStr;

use crate::basis::{whole_multiple, UniformGrid};
use crate::error::{Error, Result};
use crate::field::{end_slopes, CoefficientVector};
use crate::linsys::{condense_and_solve, BoundaryRow, CollocationRows, CondensationRecord};
use crate::metrics::L2Weighting;
use crate::problems::ProblemSpec;

/// How the levels `δ^j` relate to the reported solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// `U^j = δ^{j-1} + δ^j`; boundary rows make the sum hit the boundary data.
    #[default]
    Summed,
    /// `δ^j` itself is reported and pinned to the boundary data.
    Direct,
}

/// How the two starting levels of summed mode split the initial profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitStrategy {
    /// `δ^0, δ^{-1} = ½(U⁰ ± (Δt/2) u_t⁰)` with `u_t⁰` from the equation, so
    /// both the value and the time derivative of the expansion are right.
    #[default]
    PdeDerivative,
    /// `δ^0 = δ^{-1} = ½U⁰`.
    Symmetric,
}

/// Refresh rule for the lagged level between inner passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerUpdate {
    /// `σ* = σ^j + ½(σ^{j+1} − σ^j)`.
    #[default]
    Midpoint,
    /// `σ* = σ^{j+1}`; iterated to convergence this solves the nonlinear
    /// step equation exactly.
    Picard,
}

// text names used in configuration files and reports
macro_rules! named_enum {
    ($ty:ident, $key:literal, $($variant:ident => $name:literal),+ $(,)?) => {
        impl $ty {
            pub fn name(&self) -> &'static str {
                match self {
                    $($ty::$variant => $name,)+
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($ty::$variant),)+
                    other => Err(Error::config(
                        $key,
                        format!("`{other}` is not one of {}", [$($name),+].join(", ")),
                    )),
                }
            }
        }
    };
}

named_enum!(Mode, "mode", Summed => "summed", Direct => "direct");
named_enum!(InitStrategy, "init", PdeDerivative => "pde-derivative", Symmetric => "symmetric");
named_enum!(InnerUpdate, "inner-update", Midpoint => "midpoint", Picard => "picard");
named_enum!(L2Weighting, "l2-weighting", Unweighted => "unweighted", HWeighted => "h-weighted");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub viscosity: f64,
    pub h: f64,
    pub dt: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub inner_iterations: usize,
    pub mode: Mode,
    pub init: InitStrategy,
    pub l2_weighting: L2Weighting,
    pub inner_update: InnerUpdate,
}

impl SolverConfig {
    /// Defaults for everything except the grid and end time.
    pub fn for_problem(problem: &ProblemSpec, h: f64, dt: f64, t_end: f64) -> Self {
        Self {
            viscosity: problem.viscosity,
            h,
            dt,
            t_start: problem.t_start,
            t_end,
            inner_iterations: 2,
            mode: Mode::default(),
            init: InitStrategy::default(),
            l2_weighting: L2Weighting::default(),
            inner_update: InnerUpdate::default(),
        }
    }

    /// Checks the invariants and returns the number of time steps.
    pub fn validate(&self) -> Result<usize> {
        if !(self.viscosity > 0.0 && self.viscosity.is_finite()) {
            return Err(Error::config("nu", "must be positive"));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::config("h", "must be positive"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::config("dt", "must be positive"));
        }
        if !self.t_start.is_finite() {
            return Err(Error::config("t-start", "must be finite"));
        }
        if !(self.t_end > self.t_start && self.t_end.is_finite()) {
            return Err(Error::config("t-end", "must be greater than t-start"));
        }
        if self.inner_iterations == 0 {
            return Err(Error::config("inner-iters", "must be at least 1"));
        }
        whole_multiple(self.t_end - self.t_start, self.dt)
            .ok_or_else(|| Error::config("dt", "run length is not a whole number of steps"))
    }

    pub fn time_at(&self, step: usize) -> f64 {
        self.t_start + step as f64 * self.dt
    }
}

/// Two consecutive levels `σ^{j-1}`, `σ^j` at time `t^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub prev: CoefficientVector,
    pub curr: CoefficientVector,
    pub step: usize,
    pub time: f64,
}

impl SolverState {
    /// Reported nodal solution at `t^j`.
    pub fn solution(&self, mode: Mode) -> Vec<f64> {
        match mode {
            Mode::Summed => self
                .prev
                .nodal_values()
                .iter()
                .zip(self.curr.nodal_values())
                .map(|(a, b)| a + b)
                .collect(),
            Mode::Direct => self.curr.nodal_values(),
        }
    }

    /// Reported solution at an arbitrary point of the domain.
    pub fn solution_at(&self, x: f64, mode: Mode) -> Result<f64> {
        let curr = self.curr.eval_at(x)?;
        Ok(match mode {
            Mode::Summed => self.prev.eval_at(x)? + curr,
            Mode::Direct => curr,
        })
    }
}

/// Builds `σ^{-1}`, `σ^0` from the problem's initial data.
pub fn initial_state(problem: &ProblemSpec, cfg: &SolverConfig) -> Result<SolverState> {
    let grid = UniformGrid::spanning(problem.a, problem.b, cfg.h)
        .map_err(|e| Error::config("h", e.to_string()))?;
    let t0 = cfg.t_start;
    let nodes = grid.nodes();
    let f: Vec<f64> = nodes.iter().map(|&x| problem.exact(x, t0)).collect();
    let (fl, fr) = (problem.bc_left_deriv(t0), problem.bc_right_deriv(t0));

    let (prev, curr) = match (cfg.mode, cfg.init) {
        (Mode::Direct, _) => {
            let c = CoefficientVector::fit_initial(grid, &f, fl, fr)?;
            (c.clone(), c)
        }
        (Mode::Summed, InitStrategy::Symmetric) => {
            let half: Vec<f64> = f.iter().map(|v| 0.5 * v).collect();
            let c = CoefficientVector::fit_initial(grid, &half, 0.5 * fl, 0.5 * fr)?;
            (c.clone(), c)
        }
        (Mode::Summed, InitStrategy::PdeDerivative) => {
            let ut: Vec<f64> = nodes.iter().map(|&x| problem.exact_t(x, t0)).collect();
            let (utl, utr) = if ut.len() >= 5 {
                end_slopes(&ut, cfg.h)?
            } else {
                (0.0, 0.0)
            };
            let k = 0.5 * cfg.dt;
            let level = |sign: f64| {
                let samples: Vec<f64> = f
                    .iter()
                    .zip(&ut)
                    .map(|(u, du)| 0.5 * (u + sign * k * du))
                    .collect();
                CoefficientVector::fit_initial(
                    grid,
                    &samples,
                    0.5 * (fl + sign * k * utl),
                    0.5 * (fr + sign * k * utr),
                )
            };
            (level(-1.0)?, level(1.0)?)
        }
    };
    Ok(SolverState {
        prev,
        curr,
        step: 0,
        time: t0,
    })
}

/// End rows for the new level given boundary data at `t^{j+1}`.
///
/// Summed mode asks for `δ^{j+1} = bc − δ^j` at each end so that the sum
/// `δ^j + δ^{j+1}` matches the boundary data; direct mode pins `δ^{j+1}`.
pub fn apply_boundary(
    state: &SolverState,
    bc_left: f64,
    bc_right: f64,
    mode: Mode,
) -> Result<CondensationRecord> {
    let (left, right) = match mode {
        Mode::Summed => {
            let m = state.curr.grid().intervals() as isize;
            (
                bc_left - state.curr.eval_nodal(0)?.value,
                bc_right - state.curr.eval_nodal(m)?.value,
            )
        }
        Mode::Direct => (bc_left, bc_right),
    };
    CondensationRecord::new(BoundaryRow::value(left), BoundaryRow::value(right))
}

/// Linearized collocation rows for `σ^{j+1}`.
///
/// Row `i` is
/// `(A − cδ − d) σ_{i-1} + (4A + 2d) σ_i + (A + cδ − d) σ_{i+1} = δ − (Δt/2) δ δ_x + (νΔt/2) δ_xx`
/// with `A = 1 + (Δt/2)(δ_x + δ̃_x)`, `c = 3Δt/(2h)`, `d = 3νΔt/h²`, where
/// unmarked quantities come from `state.curr` at `x_i` and `δ̃_x` from
/// `lagged`.
pub fn assemble_step(
    state: &SolverState,
    lagged: &CoefficientVector,
    cfg: &SolverConfig,
    bc_left: f64,
    bc_right: f64,
) -> Result<(CollocationRows, CondensationRecord)> {
    let grid = state.curr.grid();
    let h = grid.spacing();
    let dt = cfg.dt;
    let nu = cfg.viscosity;
    let conv = 3.0 * dt / (2.0 * h);
    let diff = 3.0 * nu * dt / (h * h);

    let now = state.curr.nodal_all();
    let lag = lagged.nodal_all();
    let mut rows = CollocationRows::with_len(now.len());
    for (i, (d, l)) in now.iter().zip(&lag).enumerate() {
        let a = 1.0 + 0.5 * dt * (d.d1 + l.d1);
        rows.lower[i] = a - conv * d.value - diff;
        rows.diag[i] = 4.0 * a + 2.0 * diff;
        rows.upper[i] = a + conv * d.value - diff;
        rows.rhs[i] = d.value - 0.5 * dt * d.value * d.d1 + 0.5 * nu * dt * d.d2;
        let finite = rows.lower[i].is_finite()
            && rows.diag[i].is_finite()
            && rows.upper[i].is_finite()
            && rows.rhs[i].is_finite();
        if !finite {
            return Err(Error::NonFinite { node: i as isize });
        }
    }
    let rec = apply_boundary(state, bc_left, bc_right, cfg.mode)?;
    Ok((rows, rec))
}

/// Advances one step with `cfg.inner_iterations` linearized solves.
pub fn advance(
    state: &SolverState,
    cfg: &SolverConfig,
    problem: &ProblemSpec,
) -> Result<SolverState> {
    let step = state.step + 1;
    let time = cfg.time_at(step);
    let inner = || -> Result<CoefficientVector> {
        let bc_left = problem.bc_left(time);
        let bc_right = problem.bc_right(time);
        let grid = *state.curr.grid();
        let mut lagged = state.curr.clone();
        let mut next = None;
        for _ in 0..cfg.inner_iterations {
            let (rows, rec) = assemble_step(state, &lagged, cfg, bc_left, bc_right)?;
            let solved = condense_and_solve(&rows, &rec, &grid)?;
            lagged = match cfg.inner_update {
                InnerUpdate::Midpoint => state.curr.axpy(0.5, &(&solved - &state.curr)),
                InnerUpdate::Picard => solved.clone(),
            };
            next = Some(solved);
        }
        next.ok_or_else(|| Error::config("inner-iters", "must be at least 1"))
    };
    let next = inner().map_err(|e| e.at_step(step, time))?;
    Ok(SolverState {
        prev: state.curr.clone(),
        curr: next,
        step,
        time,
    })
}

/// Nodal solution recorded at one sample time.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub time: f64,
    pub step: usize,
    pub values: Vec<f64>,
}

/// Owns the state of a single run.
#[derive(Debug, Clone)]
pub struct Solver {
    problem: ProblemSpec,
    cfg: SolverConfig,
    state: SolverState,
    total_steps: usize,
}

impl Solver {
    pub fn new(problem: ProblemSpec, cfg: SolverConfig) -> Result<Self> {
        let total_steps = cfg.validate()?;
        if cfg.viscosity != problem.viscosity {
            return Err(Error::config(
                "nu",
                format!(
                    "solver viscosity {} differs from the problem's {}",
                    cfg.viscosity, problem.viscosity
                ),
            ));
        }
        let grid = UniformGrid::spanning(problem.a, problem.b, cfg.h)
            .map_err(|e| Error::config("h", e.to_string()))?;
        if grid.intervals() < 4 {
            return Err(Error::config("h", "need at least 4 space intervals"));
        }
        let state = initial_state(&problem, &cfg)?;
        Ok(Self {
            problem,
            cfg,
            state,
            total_steps,
        })
    }

    pub fn state(&self) -> &SolverState {
        &self.state
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn total_steps(&self) -> usize {
        self.total_steps
    }

    pub fn is_finished(&self) -> bool {
        self.state.step >= self.total_steps
    }

    pub fn grid(&self) -> &UniformGrid {
        self.state.curr.grid()
    }

    pub fn step(&mut self) -> Result<()> {
        self.state = advance(&self.state, &self.cfg, &self.problem)?;
        Ok(())
    }

    pub fn solution(&self) -> Vec<f64> {
        self.state.solution(self.cfg.mode)
    }

    pub fn profile(&self) -> Profile {
        Profile {
            time: self.state.time,
            step: self.state.step,
            values: self.solution(),
        }
    }
}

/// Maps sample times onto step indices of the run.
pub(crate) fn sample_steps(
    cfg: &SolverConfig,
    total: usize,
    sample_times: &[f64],
) -> Result<Vec<usize>> {
    sample_times
        .iter()
        .map(|&t| {
            if !t.is_finite() {
                return Err(Error::config("sample-times", format!("{t} is not finite")));
            }
            let k = ((t - cfg.t_start) / cfg.dt).round();
            let on_grid = (t - cfg.time_at(k.max(0.0) as usize)).abs() <= 1e-9 * t.abs().max(1.0);
            if k < 0.0 || k as usize > total || !on_grid {
                return Err(Error::config(
                    "sample-times",
                    format!("{t} is not a step time in [{}, {}]", cfg.t_start, cfg.t_end),
                ));
            }
            Ok(k as usize)
        })
        .collect()
}

/// Runs to `cfg.t_end`, recording the reported solution at each sample time
/// (in the order given).
pub fn run(
    problem: &ProblemSpec,
    cfg: &SolverConfig,
    sample_times: &[f64],
) -> Result<Vec<Profile>> {
    let mut solver = Solver::new(*problem, *cfg)?;
    let steps = sample_steps(cfg, solver.total_steps(), sample_times)?;
    let mut out: Vec<Option<Profile>> = vec![None; steps.len()];
    loop {
        let k = solver.state().step;
        if steps.contains(&k) {
            let p = solver.profile();
            for (slot, _) in out.iter_mut().zip(&steps).filter(|(_, &s)| s == k) {
                *slot = Some(p.clone());
            }
        }
        if solver.is_finished() {
            break;
        }
        solver.step()?;
    }
    Ok(out
        .into_iter()
        .map(|p| p.expect("every sample step visited"))
        .collect())
}
