//! Self-contained SVG line plots: solution curves on top, pointwise error
//! below.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, Result};
use crate::experiment::Sample;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub dashed: bool,
    pub color: &'static str,
}

/// The plotted data, kept separate from the rendering so it can be checked
/// directly.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub title: String,
    pub solution: Vec<Series>,
    pub error: Vec<Series>,
}

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

const WIDTH: f64 = 760.0;
const PANEL_HEIGHT: f64 = 260.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const GAP: f64 = 70.0;

impl Figure {
    /// Numeric (solid) and exact (dashed) curves per sample time, and
    /// `|numeric − exact|` per sample time.
    pub fn from_samples(title: impl Into<String>, samples: &[Sample]) -> Self {
        let mut solution = Vec::new();
        let mut error = Vec::new();
        for (k, s) in samples.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            solution.push(Series {
                label: format!("t = {}", s.time),
                x: s.x.clone(),
                y: s.numeric.clone(),
                dashed: false,
                color,
            });
            solution.push(Series {
                label: format!("exact t = {}", s.time),
                x: s.x.clone(),
                y: s.exact.clone(),
                dashed: true,
                color,
            });
            error.push(Series {
                label: format!("t = {}", s.time),
                x: s.x.clone(),
                y: s.numeric
                    .iter()
                    .zip(&s.exact)
                    .map(|(a, b)| (a - b).abs())
                    .collect(),
                dashed: false,
                color,
            });
        }
        Self {
            title: title.into(),
            solution,
            error,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.solution.is_empty()
    }

    pub fn to_svg(&self) -> String {
        let height = TOP + 2.0 * PANEL_HEIGHT + GAP + 50.0;
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + (WIDTH - LEFT - RIGHT) / 2.0,
            escape(&self.title)
        );
        panel(&mut svg, &self.solution, TOP, "u(x, t)", false);
        panel(
            &mut svg,
            &self.error,
            TOP + PANEL_HEIGHT + GAP,
            "|u − exact|",
            true,
        );
        svg.push_str("</svg>\n");
        svg
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn bounds(series: &[Series]) -> (f64, f64, f64, f64) {
    let fold = |f: fn(&Series) -> &Vec<f64>| {
        series
            .iter()
            .flat_map(|s| f(s).iter().copied())
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (x0, x1) = fold(|s| &s.x);
    let (mut y0, mut y1) = fold(|s| &s.y);
    if !(y0.is_finite() && y1.is_finite()) {
        (y0, y1) = (0.0, 1.0);
    }
    if y1 - y0 <= f64::EPSILON * y1.abs().max(1.0) {
        let pad = if y1 == 0.0 { 1.0 } else { 0.1 * y1.abs() };
        (y0, y1) = (y0 - pad, y1 + pad);
    } else {
        let pad = 0.05 * (y1 - y0);
        (y0, y1) = (y0 - pad, y1 + pad);
    }
    (x0, x1.max(x0 + f64::EPSILON), y0, y1)
}

fn panel(svg: &mut String, series: &[Series], top: f64, ylabel: &str, sci: bool) {
    let w = WIDTH - LEFT - RIGHT;
    let h = PANEL_HEIGHT;
    let (x0, x1, y0, y1) = bounds(series);
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * w;
    let py = |y: f64| top + h - (y - y0) / (y1 - y0) * h;

    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT}" y="{top}" width="{w}" height="{h}" fill="none" stroke="#444"/>"##
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (gx, gy) = (px(xv), py(yv));
        let ylab = if sci {
            format!("{yv:.1e}")
        } else {
            format!("{yv:.3}")
        };
        let _ = writeln!(
            svg,
            r##"<line x1="{gx:.2}" y1="{top}" x2="{gx:.2}" y2="{:.2}" stroke="#ddd"/><text x="{gx:.2}" y="{:.2}" text-anchor="middle">{xv:.2}</text>"##,
            top + h,
            top + h + 16.0
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{gy:.2}" x2="{:.2}" y2="{gy:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{ylab}</text>"##,
            LEFT + w,
            LEFT - 6.0,
            gy + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">x</text>"#,
        LEFT + w / 2.0,
        top + h + 34.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        top + h / 2.0,
        top + h / 2.0,
        escape(ylabel)
    );
    for (k, s) in series.iter().enumerate() {
        let points: Vec<String> =
            s.x.iter()
                .zip(&s.y)
                .filter(|(_, y)| y.is_finite())
                .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
        let dash = if s.dashed {
            r#" stroke-dasharray="5,4""#
        } else {
            ""
        };
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
            s.color,
            points.join(" ")
        );
        let ly = top + 14.0 + 16.0 * k as f64;
        let lx = LEFT + w + 12.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.5"{dash}/><text x="{:.2}" y="{ly:.2}">{}</text>"#,
            ly - 4.0,
            lx + 22.0,
            ly - 4.0,
            s.color,
            lx + 28.0,
            escape(&s.label)
        );
    }
}

/// Writes the plot for `samples`; with no samples nothing is written and
/// `Ok(false)` is returned.
pub fn emit_plot(title: &str, samples: &[Sample], path: &Path) -> Result<bool> {
    let fig = Figure::from_samples(title, samples);
    if fig.is_empty() {
        return Ok(false);
    }
    std::fs::write(path, fig.to_svg()).map_err(|e| CliError::io(path, e))?;
    Ok(true)
}
