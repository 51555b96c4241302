//! Quadratic (time) and cubic (space) B-splines on uniform knot grids.
//!
//! Both families are indexed so that basis function `k` is centred on the
//! knot interval around node `k`:
//!
//! * the quadratic `B^j` is supported on `[t^{j-1}, t^{j+2}]` and takes the
//!   value 1 at `t^j` and `t^{j+1}`;
//! * the cubic `B_i` is supported on `[x_{i-2}, x_{i+2}]` and takes the
//!   values 1, 4, 1 at `x_{i-1}`, `x_i`, `x_{i+1}`.
//!
//! With this scaling the quadratics sum to 2 and the cubics sum to 6 at
//! every point of the covered interval. Indices are signed because the
//! expansions need ghost functions (`B^{-1}`, `B_{-1}`, `B_{m+1}`) whose
//! centres lie outside the physical interval.

use crate::error::{Error, Result};

/// Equally spaced knots `node(k) = origin + k * spacing`, defined for every
/// integer `k`. Nodes `0..=intervals` lie in the physical interval; the rest
/// are ghost knots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    origin: f64,
    spacing: f64,
    intervals: usize,
}

impl UniformGrid {
    pub fn new(origin: f64, spacing: f64, intervals: usize) -> Result<Self> {
        if !origin.is_finite() {
            return Err(Error::InvalidGrid(format!("origin {origin} is not finite")));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacing {spacing} must be positive"
            )));
        }
        if intervals < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 intervals, got {intervals}"
            )));
        }
        Ok(Self {
            origin,
            spacing,
            intervals,
        })
    }

    /// Grid covering `[start, end]` with the given spacing. The length must be
    /// an integer multiple of the spacing up to rounding noise.
    pub fn spanning(start: f64, end: f64, spacing: f64) -> Result<Self> {
        if !(end > start) {
            return Err(Error::InvalidGrid(format!(
                "empty interval [{start}, {end}]"
            )));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacing {spacing} must be positive"
            )));
        }
        let intervals = whole_multiple(end - start, spacing).ok_or_else(|| {
            Error::InvalidGrid(format!(
                "length {} is not a multiple of spacing {spacing}",
                end - start
            ))
        })?;
        Self::new(start, spacing, intervals)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Number of intervals (`m` in space, `n` in time).
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn end(&self) -> f64 {
        self.node(self.intervals as isize)
    }

    pub fn node(&self, k: isize) -> f64 {
        self.origin + k as f64 * self.spacing
    }

    /// Physical nodes `node(0) ..= node(intervals)`.
    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.intervals as isize)
            .map(|k| self.node(k))
            .collect()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.origin && x <= self.end()
    }

    /// Index of the knot interval `[node(k), node(k+1)]` holding `x`, clamped
    /// to the physical range so the right end belongs to the last interval.
    pub fn interval_of(&self, x: f64) -> usize {
        let k = ((x - self.origin) / self.spacing).floor();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.intervals - 1)
        }
    }
}

/// Returns `n` when `length / spacing` is within rounding noise of the
/// positive integer `n`.
pub(crate) fn whole_multiple(length: f64, spacing: f64) -> Option<usize> {
    let ratio = length / spacing;
    let n = ratio.round();
    if n >= 1.0 && (ratio - n).abs() <= 1e-9 * n.max(1.0) {
        Some(n as usize)
    } else {
        None
    }
}

/// Position of `t` relative to the first support knot of `B^j`, in units of
/// the spacing: `s` in `[0, 3]` on the support.
fn quad_local(j: isize, t: f64, grid: &UniformGrid) -> f64 {
    (t - grid.node(j - 1)) / grid.spacing()
}

/// Quadratic B-spline `B^j(t)`.
pub fn quad_eval(j: isize, t: f64, grid: &UniformGrid) -> f64 {
    let s = quad_local(j, t, grid);
    if (0.0..=1.0).contains(&s) {
        s * s
    } else if s > 1.0 && s <= 2.0 {
        -3.0 + 6.0 * s - 2.0 * s * s
    } else if s > 2.0 && s <= 3.0 {
        (3.0 - s) * (3.0 - s)
    } else {
        0.0
    }
}

/// First derivative of `B^j` with respect to time.
pub fn quad_deriv(j: isize, t: f64, grid: &UniformGrid) -> f64 {
    let s = quad_local(j, t, grid);
    let ds = if (0.0..=1.0).contains(&s) {
        2.0 * s
    } else if s > 1.0 && s <= 2.0 {
        6.0 - 4.0 * s
    } else if s > 2.0 && s <= 3.0 {
        -2.0 * (3.0 - s)
    } else {
        0.0
    };
    ds / grid.spacing()
}

/// Signed offset `(x - x_i) / h` of `x` from the centre of `B_i`.
fn cubic_local(i: isize, x: f64, grid: &UniformGrid) -> f64 {
    (x - grid.node(i)) / grid.spacing()
}

/// Cubic B-spline `B_i(x)`.
pub fn cubic_eval(i: isize, x: f64, grid: &UniformGrid) -> f64 {
    let r = cubic_local(i, x, grid).abs();
    if r <= 1.0 {
        4.0 - 6.0 * r * r + 3.0 * r * r * r
    } else if r <= 2.0 {
        let w = 2.0 - r;
        w * w * w
    } else {
        0.0
    }
}

/// First derivative `B_i'(x)`.
pub fn cubic_deriv1(i: isize, x: f64, grid: &UniformGrid) -> f64 {
    let d = cubic_local(i, x, grid);
    let r = d.abs();
    // derivative of the even profile with respect to r
    let dr = if r <= 1.0 {
        -12.0 * r + 9.0 * r * r
    } else if r <= 2.0 {
        let w = 2.0 - r;
        -3.0 * w * w
    } else {
        0.0
    };
    d.signum() * dr / grid.spacing()
}

/// Second derivative `B_i''(x)`.
pub fn cubic_deriv2(i: isize, x: f64, grid: &UniformGrid) -> f64 {
    let r = cubic_local(i, x, grid).abs();
    let h = grid.spacing();
    if r <= 1.0 {
        (-12.0 + 18.0 * r) / (h * h)
    } else if r <= 2.0 {
        6.0 * (2.0 - r) / (h * h)
    } else {
        0.0
    }
}

/// Value and first two derivatives of every cubic that is nonzero at `x`.
///
/// Returns the index of the first supported function and the weights for
/// indices `first .. first + 4`.
pub fn cubic_support(x: f64, grid: &UniformGrid) -> (isize, [[f64; 4]; 3]) {
    let first = grid.interval_of(x) as isize - 1;
    let mut out = [[0.0; 4]; 3];
    for (k, i) in (first..first + 4).enumerate() {
        out[0][k] = cubic_eval(i, x, grid);
        out[1][k] = cubic_deriv1(i, x, grid);
        out[2][k] = cubic_deriv2(i, x, grid);
    }
    (first, out)
}

/// Weights that nodal values of a cubic expansion put on
/// `(σ_{i-1}, σ_i, σ_{i+1})`.
///
/// Entry `k` of each row is the neighbouring basis function `B_{i-1+k}`
/// evaluated at `x_i`, so the rows read (1, 4, 1), (−3/h, 0, 3/h) and
/// (6/h², −12/h², 6/h²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceStencil {
    pub value: [f64; 3],
    pub d1: [f64; 3],
    pub d2: [f64; 3],
}

impl SpaceStencil {
    pub fn from_basis(grid: &UniformGrid) -> Self {
        // any interior node works; the grid is uniform
        let i = 1;
        let x = grid.node(i);
        let mut stencil = Self {
            value: [0.0; 3],
            d1: [0.0; 3],
            d2: [0.0; 3],
        };
        for k in 0..3 {
            let idx = i - 1 + k as isize;
            stencil.value[k] = cubic_eval(idx, x, grid);
            stencil.d1[k] = cubic_deriv1(idx, x, grid);
            stencil.d2[k] = cubic_deriv2(idx, x, grid);
        }
        stencil
    }
}

/// Weights that a quadratic-in-time expansion puts on `(δ^{j-1}, δ^j)` at
/// the knot `t^j`: values (1, 1) and first derivatives (−2/Δt, 2/Δt).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStencil {
    pub value: [f64; 2],
    pub d1: [f64; 2],
}

impl TimeStencil {
    pub fn from_basis(grid: &UniformGrid) -> Self {
        let j = 1;
        let t = grid.node(j);
        Self {
            value: [quad_eval(j - 1, t, grid), quad_eval(j, t, grid)],
            d1: [quad_deriv(j - 1, t, grid), quad_deriv(j, t, grid)],
        }
    }
}
