//! Tridiagonal solves for the collocation systems.
//!
//! A collocation system on a space grid with `m` intervals has `m + 3`
//! unknowns `σ_{-1} ..= σ_{m+1}`: one row per node `x_0 ..= x_m`, each
//! touching `σ_{i-1}, σ_i, σ_{i+1}`, plus one extra row at each end. The end
//! rows only touch the two ghosts and their neighbours, so the ghosts can be
//! eliminated up front, leaving a plain `(m + 1)`-row tridiagonal system.

use crate::basis::UniformGrid;
use crate::error::{Error, Result};
use crate::field::CoefficientVector;

/// Pivots below this fraction of their row's magnitude are treated as zero.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::LengthMismatch {
                expected: 1,
                actual: 0,
            });
        }
        for len in [sub.len(), sup.len()] {
            if len != n - 1 {
                return Err(Error::LengthMismatch {
                    expected: n - 1,
                    actual: len,
                });
            }
        }
        if rhs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: rhs.len(),
            });
        }
        Ok(Self {
            sub,
            diag,
            sup,
            rhs,
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `A z`, for residual checks.
    pub fn apply(&self, z: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * z[i];
                if i > 0 {
                    acc += self.sub[i - 1] * z[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * z[i + 1];
                }
                acc
            })
            .collect()
    }

    fn row_scale(&self, i: usize) -> f64 {
        let mut scale = self.diag[i].abs();
        if i > 0 {
            scale = scale.max(self.sub[i - 1].abs());
        }
        if i + 1 < self.len() {
            scale = scale.max(self.sup[i].abs());
        }
        scale
    }
}

/// Thomas algorithm (Gaussian elimination without pivoting).
pub fn thomas_solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];

    let mut pivot = sys.diag[0];
    check_pivot(sys, 0, pivot)?;
    if n > 1 {
        c[0] = sys.sup[0] / pivot;
    }
    d[0] = sys.rhs[0] / pivot;

    for i in 1..n {
        pivot = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
        check_pivot(sys, i, pivot)?;
        if i + 1 < n {
            c[i] = sys.sup[i] / pivot;
        }
        d[i] = (sys.rhs[i] - sys.sub[i - 1] * d[i - 1]) / pivot;
    }

    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

fn check_pivot(sys: &TridiagonalSystem, row: usize, pivot: f64) -> Result<()> {
    let scale = sys.row_scale(row);
    if !pivot.is_finite() || pivot.abs() < PIVOT_TOLERANCE * scale || scale == 0.0 {
        return Err(Error::SingularSystem { row, pivot });
    }
    Ok(())
}

/// Collocation rows at nodes `0 ..= m` before condensation. Row `i` reads
/// `lower[i] σ_{i-1} + diag[i] σ_i + upper[i] σ_{i+1} = rhs[i]`, so
/// `lower[0]` multiplies the left ghost and `upper[m]` the right one.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationRows {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl CollocationRows {
    pub fn with_len(n: usize) -> Self {
        Self {
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
            rhs: vec![0.0; n],
        }
    }

    /// Same stencil on every row.
    pub fn uniform(n: usize, stencil: [f64; 3], rhs: Vec<f64>) -> Self {
        Self {
            lower: vec![stencil[0]; n],
            diag: vec![stencil[1]; n],
            upper: vec![stencil[2]; n],
            rhs,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }
}

/// One end row: `coeffs · (σ_{k-1}, σ_k, σ_{k+1}) = value`, centred on the
/// boundary node `k` (0 or m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRow {
    pub coeffs: [f64; 3],
    pub value: f64,
}

impl BoundaryRow {
    /// Fixes the nodal value: `σ_{k-1} + 4σ_k + σ_{k+1} = value`.
    pub fn value(value: f64) -> Self {
        Self {
            coeffs: [1.0, 4.0, 1.0],
            value,
        }
    }

    /// Fixes the nodal slope: `(3/h)(σ_{k+1} - σ_{k-1}) = slope`.
    pub fn slope(h: f64, slope: f64) -> Self {
        Self {
            coeffs: [-3.0 / h, 0.0, 3.0 / h],
            value: slope,
        }
    }
}

/// End rows used to eliminate the ghosts `σ_{-1}` and `σ_{m+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensationRecord {
    pub left: BoundaryRow,
    pub right: BoundaryRow,
}

impl CondensationRecord {
    pub fn new(left: BoundaryRow, right: BoundaryRow) -> Result<Self> {
        if left.coeffs[0] == 0.0 || !left.coeffs[0].is_finite() {
            return Err(Error::DecoupledGhost("left"));
        }
        if right.coeffs[2] == 0.0 || !right.coeffs[2].is_finite() {
            return Err(Error::DecoupledGhost("right"));
        }
        Ok(Self { left, right })
    }
}

/// Eliminates both ghosts, leaving the tridiagonal system for `σ_0 ..= σ_m`.
pub fn condense(rows: &CollocationRows, rec: &CondensationRecord) -> Result<TridiagonalSystem> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            actual: n,
        });
    }
    let mut diag = rows.diag.clone();
    let mut sub = rows.lower[1..].to_vec();
    let mut sup = rows.upper[..n - 1].to_vec();
    let mut rhs = rows.rhs.clone();

    // σ_{-1} = (v - p σ_0 - q σ_1) / g
    let [g, p, q] = rec.left.coeffs;
    let a0 = rows.lower[0] / g;
    diag[0] -= a0 * p;
    sup[0] -= a0 * q;
    rhs[0] -= a0 * rec.left.value;

    // σ_{m+1} = (v - p σ_{m-1} - q σ_m) / g
    let [p, q, g] = rec.right.coeffs;
    let cm = rows.upper[n - 1] / g;
    sub[n - 2] -= cm * p;
    diag[n - 1] -= cm * q;
    rhs[n - 1] -= cm * rec.right.value;

    TridiagonalSystem::new(sub, diag, sup, rhs)
}

/// Solves the full `(m + 3)`-unknown system and restores the ghosts.
pub fn condense_and_solve(
    rows: &CollocationRows,
    rec: &CondensationRecord,
    grid: &UniformGrid,
) -> Result<CoefficientVector> {
    if rows.len() != grid.intervals() + 1 {
        return Err(Error::LengthMismatch {
            expected: grid.intervals() + 1,
            actual: rows.len(),
        });
    }
    let inner = thomas_solve(&condense(rows, rec)?)?;
    let n = inner.len();

    let [g, p, q] = rec.left.coeffs;
    let left_ghost = (rec.left.value - p * inner[0] - q * inner[1]) / g;
    let [p, q, g] = rec.right.coeffs;
    let right_ghost = (rec.right.value - p * inner[n - 2] - q * inner[n - 1]) / g;

    let mut values = Vec::with_capacity(n + 2);
    values.push(left_ghost);
    values.extend_from_slice(&inner);
    values.push(right_ghost);
    CoefficientVector::new(values, *grid)
}
