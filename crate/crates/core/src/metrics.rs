//! Discrete error norms and peak diagnostics.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum L2Weighting {
    /// `√(Σ e_i²)`
    #[default]
    Unweighted,
    /// `√(h Σ e_i²)`
    HWeighted,
}

fn check_lengths(numeric: &[f64], exact: &[f64]) -> Result<()> {
    if numeric.len() != exact.len() {
        return Err(Error::LengthMismatch {
            expected: exact.len(),
            actual: numeric.len(),
        });
    }
    if numeric.is_empty() {
        return Err(Error::EmptyProfile);
    }
    Ok(())
}

/// `max_i |numeric_i − exact_i|`
pub fn linf_norm(numeric: &[f64], exact: &[f64]) -> Result<f64> {
    check_lengths(numeric, exact)?;
    Ok(numeric
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

pub fn l2_norm(numeric: &[f64], exact: &[f64], h: f64, weighting: L2Weighting) -> Result<f64> {
    check_lengths(numeric, exact)?;
    let sum: f64 = numeric
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(match weighting {
        L2Weighting::Unweighted => sum.sqrt(),
        L2Weighting::HWeighted => (h * sum).sqrt(),
    })
}

/// Largest value and its position; ties go to the leftmost node.
pub fn peak(profile: &[f64], nodes: &[f64]) -> Result<(f64, f64)> {
    if profile.is_empty() {
        return Err(Error::EmptyProfile);
    }
    if profile.len() != nodes.len() {
        return Err(Error::LengthMismatch {
            expected: nodes.len(),
            actual: profile.len(),
        });
    }
    let mut best = 0;
    for (i, &v) in profile.iter().enumerate() {
        if v > profile[best] {
            best = i;
        }
    }
    Ok((profile[best], nodes[best]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub time: f64,
    pub linf: f64,
    pub l2_unweighted: f64,
    pub l2_h_weighted: f64,
    pub peak_value: f64,
    pub peak_location: f64,
}

impl ErrorReport {
    /// Scores a nodal profile on equally spaced `nodes` against exact values.
    pub fn compute(time: f64, numeric: &[f64], exact: &[f64], nodes: &[f64]) -> Result<Self> {
        let h = if nodes.len() > 1 {
            nodes[1] - nodes[0]
        } else {
            0.0
        };
        let (peak_value, peak_location) = peak(numeric, nodes)?;
        Ok(Self {
            time,
            linf: linf_norm(numeric, exact)?,
            l2_unweighted: l2_norm(numeric, exact, h, L2Weighting::Unweighted)?,
            l2_h_weighted: l2_norm(numeric, exact, h, L2Weighting::HWeighted)?,
            peak_value,
            peak_location,
        })
    }

    pub fn l2(&self, weighting: L2Weighting) -> f64 {
        match weighting {
            L2Weighting::Unweighted => self.l2_unweighted,
            L2Weighting::HWeighted => self.l2_h_weighted,
        }
    }
}
