//! Benchmark problems with closed-form solutions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Traveling-front parameters: states `α + μ` (left) and `μ − α` (right),
/// speed `μ`, initial position `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontParams {
    pub alpha: f64,
    pub mu: f64,
    pub gamma: f64,
}

impl Default for FrontParams {
    fn default() -> Self {
        Self {
            alpha: 0.4,
            mu: 0.6,
            gamma: 0.125,
        }
    }
}

impl FrontParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::config("alpha", "must be positive"));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::config("mu", "must be positive"));
        }
        if !self.gamma.is_finite() {
            return Err(Error::config("gamma", "must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemKind {
    /// Decaying shock-like pulse on `[0, 1]`, valid for `t >= 1`.
    Shock,
    /// Traveling front on `[0, 1]` starting at `t = 0`.
    Front(FrontParams),
    /// `u ≡ c`; every consistent scheme must reproduce it exactly.
    Constant(f64),
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::Shock => "shock",
            ProblemKind::Front(_) => "front",
            ProblemKind::Constant(_) => "constant",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shock" => Ok(ProblemKind::Shock),
            "front" => Ok(ProblemKind::Front(FrontParams::default())),
            "constant" => Ok(ProblemKind::Constant(1.0)),
            other => Err(Error::UnknownProblem(other.to_string())),
        }
    }
}

/// A Burgers' initial-boundary value problem together with its exact
/// solution. Initial and boundary data are read off the exact solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub viscosity: f64,
    pub a: f64,
    pub b: f64,
    pub t_start: f64,
}

/// Solution value and its first two space derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub u: f64,
    pub u_x: f64,
    pub u_xx: f64,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind, viscosity: f64) -> Result<Self> {
        if !(viscosity > 0.0 && viscosity.is_finite()) {
            return Err(Error::config(
                "nu",
                format!("viscosity {viscosity} must be positive"),
            ));
        }
        let t_start = match kind {
            ProblemKind::Shock => 1.0,
            ProblemKind::Front(p) => {
                p.validate()?;
                0.0
            }
            ProblemKind::Constant(c) => {
                if !c.is_finite() {
                    return Err(Error::config("value", "must be finite"));
                }
                0.0
            }
        };
        Ok(Self {
            kind,
            viscosity,
            a: 0.0,
            b: 1.0,
            t_start,
        })
    }

    /// End time used by the reference experiments.
    pub fn default_t_end(&self) -> f64 {
        match self.kind {
            ProblemKind::Shock => 3.25,
            ProblemKind::Front(_) => 1.2,
            ProblemKind::Constant(_) => 1.0,
        }
    }

    pub fn exact(&self, x: f64, t: f64) -> f64 {
        self.jet(x, t).u
    }

    pub fn exact_x(&self, x: f64, t: f64) -> f64 {
        self.jet(x, t).u_x
    }

    pub fn exact_xx(&self, x: f64, t: f64) -> f64 {
        self.jet(x, t).u_xx
    }

    pub fn jet(&self, x: f64, t: f64) -> Jet {
        match self.kind {
            ProblemKind::Shock => shock_jet(x, t, self.viscosity),
            ProblemKind::Front(p) => front_jet(x, t, &p, self.viscosity),
            ProblemKind::Constant(c) => Jet {
                u: c,
                u_x: 0.0,
                u_xx: 0.0,
            },
        }
    }

    /// `u_t = −u u_x + ν u_xx`, from the exact space derivatives.
    pub fn exact_t(&self, x: f64, t: f64) -> f64 {
        let j = self.jet(x, t);
        -j.u * j.u_x + self.viscosity * j.u_xx
    }

    pub fn ic(&self, x: f64) -> f64 {
        self.exact(x, self.t_start)
    }

    pub fn bc_left(&self, t: f64) -> f64 {
        self.exact(self.a, t)
    }

    pub fn bc_right(&self, t: f64) -> f64 {
        self.exact(self.b, t)
    }

    pub fn bc_left_deriv(&self, t: f64) -> f64 {
        self.exact_x(self.a, t)
    }

    pub fn bc_right_deriv(&self, t: f64) -> f64 {
        self.exact_x(self.b, t)
    }
}

/// Convenience constructor from a problem name with default parameters.
pub fn make_problem(kind: &str, viscosity: f64) -> Result<ProblemSpec> {
    ProblemSpec::new(kind.parse()?, viscosity)
}

/// `(φ/(1+φ), 1/(1+φ))` for `φ = exp(log_phi)` without overflow.
fn logistic_pair(log_phi: f64) -> (f64, f64) {
    if log_phi > 0.0 {
        let e = (-log_phi).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = log_phi.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    }
}

/// `ln √(t/t₀) + x²/(4νt)` with `t₀ = exp(1/(8ν))`.
fn shock_log_phi(x: f64, t: f64, nu: f64) -> f64 {
    x * x / (4.0 * nu * t) - 1.0 / (16.0 * nu) + 0.5 * t.ln()
}

/// `(x/t) / (1 + √(t/t₀) exp(x²/(4νt)))`, `t₀ = exp(1/(8ν))`.
pub fn shock_exact(x: f64, t: f64, nu: f64) -> f64 {
    let (_, g) = logistic_pair(shock_log_phi(x, t, nu));
    x / t * g
}

/// `(u_x, u_xx)` of [`shock_exact`].
pub fn shock_exact_derivs(x: f64, t: f64, nu: f64) -> (f64, f64) {
    let j = shock_jet(x, t, nu);
    (j.u_x, j.u_xx)
}

fn shock_jet(x: f64, t: f64, nu: f64) -> Jet {
    let (w, g) = logistic_pair(shock_log_phi(x, t, nu));
    let l_x = x / (2.0 * nu * t);
    let q = x * x / (2.0 * nu * t);
    let q_x = x / (nu * t);
    Jet {
        u: x / t * g,
        u_x: g / t * (1.0 - w * q),
        u_xx: -(g * w / t) * (l_x * (1.0 + q - 2.0 * w * q) + q_x),
    }
}

/// `(α + μ + (μ − α) e^η) / (1 + e^η)` with `η = α (x − μt − γ) / ν`.
pub fn front_exact(x: f64, t: f64, params: &FrontParams, nu: f64) -> f64 {
    front_jet(x, t, params, nu).u
}

fn front_jet(x: f64, t: f64, p: &FrontParams, nu: f64) -> Jet {
    // u = μ − α tanh(η/2); sech² computed from e^{-|η|} to stay finite
    let eta = p.alpha * (x - p.mu * t - p.gamma) / nu;
    let e = (-eta.abs()).exp();
    let tanh_half = eta.signum() * (1.0 - e) / (1.0 + e);
    let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    let k = p.alpha / (2.0 * nu);
    Jet {
        u: p.mu - p.alpha * tanh_half,
        u_x: -p.alpha * k * sech2,
        u_xx: 2.0 * p.alpha * k * k * tanh_half * sech2,
    }
}
