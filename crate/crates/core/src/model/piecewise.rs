//! Exact piecewise-constant functions on the real line.
//!
//! A [`PiecewiseConstant1D`] is described by a strictly increasing list of
//! breakpoints `b_0 < b_1 < ... < b_{n-1}`, one value per bounded interval
//! `[b_i, b_{i+1})`, and the two values taken on the unbounded tails
//! `]-inf, b_0)` and `[b_{n-1}, +inf[`. Every interval is left-closed and
//! right-open, so pointwise evaluation is unambiguous.

use std::fmt::Write as _;

use crate::error::{invalid_arg, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseConstant1D {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    left: f64,
    right: f64,
}

impl PiecewiseConstant1D {
    /// Builds a function from its breakpoints, interior values and tail values.
    ///
    /// With no breakpoints the function is constant and `left` must equal `right`.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, left: f64, right: f64) -> Result<Self> {
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(invalid_arg!("breakpoints must be finite"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid_arg!("breakpoints must be strictly increasing"));
        }
        let expected = breakpoints.len().saturating_sub(1);
        if values.len() != expected {
            return Err(invalid_arg!(
                "{} breakpoints need {} interior values, got {}",
                breakpoints.len(),
                expected,
                values.len()
            ));
        }
        if !left.is_finite() || !right.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(invalid_arg!("values must be finite"));
        }
        if breakpoints.is_empty() && left != right {
            return Err(invalid_arg!(
                "a function without breakpoints must have equal tails"
            ));
        }
        Ok(Self {
            breakpoints,
            values,
            left,
            right,
        })
    }

    pub fn constant(c: f64) -> Self {
        Self {
            breakpoints: Vec::new(),
            values: Vec::new(),
            left: c,
            right: c,
        }
    }

    /// `left` on `]-inf, at)`, `right` on `[at, +inf[`.
    pub fn step(at: f64, left: f64, right: f64) -> Self {
        Self {
            breakpoints: vec![at],
            values: Vec::new(),
            left,
            right,
        }
    }

    /// Indicator of `[a, b)` scaled by `height`.
    pub fn indicator(a: f64, b: f64, height: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![height], 0.0, 0.0)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_extension(&self) -> f64 {
        self.left
    }

    pub fn right_extension(&self) -> f64 {
        self.right
    }

    /// Exact value at `x` (left-closed, right-open intervals).
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.breakpoints.len();
        if n == 0 || x < self.breakpoints[0] {
            return self.left;
        }
        if x >= self.breakpoints[n - 1] {
            return self.right;
        }
        // number of breakpoints <= x, at least 1 and at most n - 1 here
        let idx = self.breakpoints.partition_point(|&b| b <= x);
        self.values[idx - 1]
    }

    /// Iterates over `(start, end, value)` for every piece, tails included
    /// with infinite endpoints.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n = self.breakpoints.len();
        let first = (f64::NEG_INFINITY, self.breakpoints.first().copied().unwrap_or(f64::INFINITY), self.left);
        let inner = (0..n.saturating_sub(1))
            .map(move |i| (self.breakpoints[i], self.breakpoints[i + 1], self.values[i]));
        let last = (n > 0).then(|| (self.breakpoints[n - 1], f64::INFINITY, self.right));
        std::iter::once(first).chain(inner).chain(last)
    }

    /// Exact integral over `[a, b]`, `a <= b`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        self.pieces()
            .map(|(s, e, v)| {
                let lo = s.max(a);
                let hi = e.min(b);
                if hi > lo {
                    v * (hi - lo)
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// Mean value over `[a, b]`, computed exactly from the breakpoints.
    pub fn cell_average(&self, a: f64, b: f64) -> Result<f64> {
        if !(a < b) {
            return Err(invalid_arg!("cell_average needs a < b, got [{a}, {b}]"));
        }
        Ok(self.integral(a, b) / (b - a))
    }

    /// Sum of absolute jumps, including the jumps from and to the tails.
    pub fn total_variation(&self) -> f64 {
        self.jump_sizes().map(|(_, j)| j.abs()).sum()
    }

    /// Signed jump `f(b+) - f(b-)` at every breakpoint.
    pub fn jump_sizes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.breakpoints.len();
        (0..n).map(move |i| {
            let before = if i == 0 { self.left } else { self.values[i - 1] };
            let after = if i + 1 == n { self.right } else { self.values[i] };
            (self.breakpoints[i], after - before)
        })
    }

    /// Breakpoints carrying a nonzero jump.
    pub fn jump_points(&self) -> Vec<f64> {
        self.jump_sizes()
            .filter(|(_, j)| *j != 0.0)
            .map(|(b, _)| b)
            .collect()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(self.left.min(self.right), |m, &v| m.min(v))
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(self.left.max(self.right), |m, &v| m.max(v))
    }

    /// Writes the plain-text form: `left=` and `right=` headers, then one
    /// `breakpoint value` line per piece starting at a breakpoint. The value
    /// on the last line is the right tail.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "left={}", self.left);
        let _ = writeln!(out, "right={}", self.right);
        let n = self.breakpoints.len();
        for i in 0..n {
            let v = if i + 1 == n { self.right } else { self.values[i] };
            let _ = writeln!(out, "{} {}", self.breakpoints[i], v);
        }
        out
    }

    /// Parses the format written by [`to_text`](Self::to_text). Blank lines
    /// and lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut left = None;
        let mut right = None;
        let mut rows: Vec<(f64, f64)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let number = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| perr(format!("bad number {s:?}: {e}")))
            };
            if let Some(v) = line.strip_prefix("left=") {
                left = Some(number(v)?);
            } else if let Some(v) = line.strip_prefix("right=") {
                right = Some(number(v)?);
            } else {
                let mut parts = line.split_whitespace();
                let (Some(b), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(perr(format!("expected `breakpoint value`, got {line:?}")));
                };
                rows.push((number(b)?, number(v)?));
            }
        }
        let left = left.ok_or(Error::Parse {
            line: 0,
            message: "missing `left=` header".into(),
        })?;
        let right = right.ok_or(Error::Parse {
            line: 0,
            message: "missing `right=` header".into(),
        })?;
        if let Some(&(_, last)) = rows.last() {
            if last != right {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("last piece value {last} differs from right={right}"),
                });
            }
        }
        let breakpoints: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let values: Vec<f64> = rows
            .iter()
            .take(rows.len().saturating_sub(1))
            .map(|r| r.1)
            .collect();
        Self::new(breakpoints, values, left, right)
    }
}

/// Free-function form of [`PiecewiseConstant1D::eval`].
pub fn eval_piecewise(f: &PiecewiseConstant1D, x: f64) -> f64 {
    f.eval(x)
}

/// Free-function form of [`PiecewiseConstant1D::cell_average`].
pub fn cell_average(f: &PiecewiseConstant1D, a: f64, b: f64) -> Result<f64> {
    f.cell_average(a, b)
}
