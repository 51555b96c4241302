//! Crank–Nicolson finite-difference reference solver.
//!
//! Nodal unknowns `u_0 ..= u_m`, centred differences for `u_x` and `u_xx`,
//! trapezoidal rule in time. The nonlinear term at the new level is
//! linearized the same way as in the spline stepper, with the derivative
//! factor taken from a lagged profile: `u^{n+1} D(ũ)`. The only code shared
//! with the stepper is the tridiagonal solve.

use crate::error::{Error, Result};
use crate::linsys::{thomas_solve, TridiagonalSystem};
use crate::problems::ProblemSpec;
use crate::stepper::{InnerUpdate, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct FdProfile {
    pub time: f64,
    pub values: Vec<f64>,
}

/// Runs from `cfg.t_start` to `cfg.t_end` and returns the profile at every
/// step, starting with the initial one.
pub fn cn_fd_run(problem: &ProblemSpec, cfg: &SolverConfig) -> Result<Vec<FdProfile>> {
    let steps = cfg.validate()?;
    let h = cfg.h;
    let m = crate::basis::whole_multiple(problem.b - problem.a, h)
        .ok_or_else(|| Error::config("h", "domain length is not a multiple of h"))?;
    if m < 2 {
        return Err(Error::config("h", "need at least 2 space intervals"));
    }
    let xs: Vec<f64> = (0..=m).map(|i| problem.a + i as f64 * h).collect();
    let mut u: Vec<f64> = xs.iter().map(|&x| problem.exact(x, cfg.t_start)).collect();

    let mut out = Vec::with_capacity(steps + 1);
    out.push(FdProfile {
        time: cfg.t_start,
        values: u.clone(),
    });

    let r = cfg.viscosity * cfg.dt / (2.0 * h * h);
    let half_dt = 0.5 * cfg.dt;
    let n = m - 1;
    for step in 1..=steps {
        let t = cfg.time_at(step);
        let (bl, br) = (problem.bc_left(t), problem.bc_right(t));

        // explicit half of the trapezoidal rule
        let explicit: Vec<f64> = (1..m)
            .map(|i| {
                let ux = (u[i + 1] - u[i - 1]) / (2.0 * h);
                u[i] - half_dt * u[i] * ux + r * (u[i + 1] - 2.0 * u[i] + u[i - 1])
            })
            .collect();

        let mut lagged = u.clone();
        lagged[0] = bl;
        lagged[m] = br;
        let mut next = u.clone();
        for _ in 0..cfg.inner_iterations {
            let mut diag = vec![0.0; n];
            for (k, d) in diag.iter_mut().enumerate() {
                let i = k + 1;
                let dlag = (lagged[i + 1] - lagged[i - 1]) / (2.0 * h);
                *d = 1.0 + 2.0 * r + half_dt * dlag;
            }
            let mut rhs = explicit.clone();
            rhs[0] += r * bl;
            rhs[n - 1] += r * br;
            let sys = TridiagonalSystem::new(vec![-r; n - 1], diag, vec![-r; n - 1], rhs)?;
            let interior = thomas_solve(&sys).map_err(|e| e.at_step(step, t))?;

            next[0] = bl;
            next[m] = br;
            next[1..m].copy_from_slice(&interior);
            if let Some(i) = next.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { node: i as isize }.at_step(step, t));
            }
            lagged = match cfg.inner_update {
                InnerUpdate::Midpoint => u.iter().zip(&next).map(|(a, b)| 0.5 * (a + b)).collect(),
                InnerUpdate::Picard => next.clone(),
            };
        }
        u = next;
        out.push(FdProfile {
            time: t,
            values: u.clone(),
        });
    }
    Ok(out)
}
