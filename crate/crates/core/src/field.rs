//! One time level of the solution as a cubic-spline expansion
//! `δ(x) = Σ_{i=-1}^{m+1} σ_i B_i(x)`.

use std::ops::{Add, Mul, Sub};

use crate::basis::{cubic_support, UniformGrid};
use crate::error::{Error, Result};
use crate::linsys::{condense_and_solve, BoundaryRow, CollocationRows, CondensationRecord};

/// Spline amplitudes `σ_{-1} ..= σ_{m+1}` over a space grid with `m`
/// intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    values: Vec<f64>,
    grid: UniformGrid,
}

/// Value and first two derivatives of an expansion at a grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalTriple {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl CoefficientVector {
    pub fn new(values: Vec<f64>, grid: UniformGrid) -> Result<Self> {
        let expected = grid.intervals() + 3;
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                node: k as isize - 1,
            });
        }
        Ok(Self { values, grid })
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        Self {
            values: vec![0.0; grid.intervals() + 3],
            grid,
        }
    }

    pub fn constant(grid: UniformGrid, sigma: f64) -> Self {
        Self {
            values: vec![sigma; grid.intervals() + 3],
            grid,
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// Raw amplitudes, ghost `σ_{-1}` first.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `σ_i` for `-1 <= i <= m + 1`.
    pub fn get(&self, i: isize) -> f64 {
        self.values[(i + 1) as usize]
    }

    pub fn eval_nodal(&self, i: isize) -> Result<NodalTriple> {
        let m = self.grid.intervals();
        if i < 0 || i > m as isize {
            return Err(Error::NodeOutOfRange { index: i, last: m });
        }
        Ok(self.nodal_unchecked(i as usize))
    }

    fn nodal_unchecked(&self, i: usize) -> NodalTriple {
        // values[i] is σ_{i-1}
        let (l, c, r) = (self.values[i], self.values[i + 1], self.values[i + 2]);
        let h = self.grid.spacing();
        NodalTriple {
            value: l + 4.0 * c + r,
            d1: 3.0 / h * (r - l),
            d2: 6.0 / (h * h) * (l - 2.0 * c + r),
        }
    }

    /// `eval_nodal` at every node `0 ..= m`.
    pub fn nodal_all(&self) -> Vec<NodalTriple> {
        (0..=self.grid.intervals())
            .map(|i| self.nodal_unchecked(i))
            .collect()
    }

    /// Nodal values `δ(x_0) ..= δ(x_m)`.
    pub fn nodal_values(&self) -> Vec<f64> {
        (0..=self.grid.intervals())
            .map(|i| self.nodal_unchecked(i).value)
            .collect()
    }

    /// `δ(x)` anywhere in the physical interval.
    pub fn eval_at(&self, x: f64) -> Result<f64> {
        Ok(self.eval_with_derivs_at(x)?.value)
    }

    /// `δ`, `δ_x` and `δ_xx` anywhere in the physical interval.
    pub fn eval_with_derivs_at(&self, x: f64) -> Result<NodalTriple> {
        if !self.grid.contains(x) {
            return Err(Error::OutOfDomain {
                x,
                a: self.grid.origin(),
                b: self.grid.end(),
            });
        }
        let (first, w) = cubic_support(x, &self.grid);
        let mut out = NodalTriple {
            value: 0.0,
            d1: 0.0,
            d2: 0.0,
        };
        for k in 0..4 {
            let sigma = self.get(first + k as isize);
            out.value += sigma * w[0][k];
            out.d1 += sigma * w[1][k];
            out.d2 += sigma * w[2][k];
        }
        Ok(out)
    }

    /// Interpolating spline through `samples` at `x_0 ..= x_m` with slopes
    /// `d_left`, `d_right` prescribed at the two ends.
    pub fn fit_initial(
        grid: UniformGrid,
        samples: &[f64],
        d_left: f64,
        d_right: f64,
    ) -> Result<Self> {
        let n = grid.intervals() + 1;
        if samples.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: samples.len(),
            });
        }
        if let Some(k) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { node: k as isize });
        }
        if !d_left.is_finite() {
            return Err(Error::NonFinite { node: 0 });
        }
        if !d_right.is_finite() {
            return Err(Error::NonFinite {
                node: grid.intervals() as isize,
            });
        }
        let h = grid.spacing();
        let rows = CollocationRows::uniform(n, [1.0, 4.0, 1.0], samples.to_vec());
        let rec = CondensationRecord::new(
            BoundaryRow::slope(h, d_left),
            BoundaryRow::slope(h, d_right),
        )?;
        condense_and_solve(&rows, &rec, &grid)
    }

    pub fn axpy(&self, alpha: f64, other: &Self) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + alpha * b)
                .collect(),
            grid: self.grid,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for &CoefficientVector {
    type Output = CoefficientVector;

    fn add(self, rhs: Self) -> CoefficientVector {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &CoefficientVector {
    type Output = CoefficientVector;

    fn sub(self, rhs: Self) -> CoefficientVector {
        self.axpy(-1.0, rhs)
    }
}

impl Mul<&CoefficientVector> for f64 {
    type Output = CoefficientVector;

    fn mul(self, rhs: &CoefficientVector) -> CoefficientVector {
        CoefficientVector {
            values: rhs.values.iter().map(|v| self * v).collect(),
            grid: rhs.grid,
        }
    }
}

/// Fourth-order one-sided slopes at both ends of equally spaced samples.
///
/// Used for slope data when no analytic derivative is available. Needs at
/// least five samples.
pub fn end_slopes(samples: &[f64], h: f64) -> Result<(f64, f64)> {
    const W: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let n = samples.len();
    if n < 5 {
        return Err(Error::LengthMismatch {
            expected: 5,
            actual: n,
        });
    }
    let left: f64 = W.iter().zip(samples).map(|(w, f)| w * f).sum::<f64>() / (12.0 * h);
    let right: f64 = -W
        .iter()
        .zip(samples.iter().rev())
        .map(|(w, f)| w * f)
        .sum::<f64>()
        / (12.0 * h);
    Ok((left, right))
}
