//! Check reports and sampled grid functions.

use std::fmt;

/// Outcome of one invariant check: a residual compared against a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckReport {
    /// Passes when the residual is finite and within tolerance.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
        }
    }

    /// A check whose pass criterion is not a plain `residual <= tolerance`.
    pub fn with_verdict(name: impl Into<String>, residual: f64, tolerance: f64, passed: bool) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed,
        }
    }

    /// A check that could not be evaluated at all.
    pub fn failed(name: impl Into<String>) -> Self {
        Self::with_verdict(name, f64::NAN, 0.0, false)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// Combine several checks into one whose residual is the worst ratio residual/tolerance.
    pub fn all(name: impl Into<String>, parts: &[CheckReport]) -> Self {
        let worst = parts
            .iter()
            .map(|r| if r.tolerance > 0.0 { r.residual / r.tolerance } else { r.residual })
            .fold(0.0_f64, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) });
        Self::with_verdict(name, worst, 1.0, parts.iter().all(|r| r.passed))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} residual={:.3e} tol={:.1e} {}",
            self.name,
            self.residual,
            self.tolerance,
            self.verdict()
        )
    }
}

/// Samples of a function on a 1-D grid, with labels for the axis and values.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    pub grid: Vec<f64>,
    pub values: Vec<T>,
    pub grid_label: String,
    pub value_label: String,
}

impl<T> GridFunction<T> {
    pub fn new(grid: Vec<f64>, values: Vec<T>, grid_label: impl Into<String>, value_label: impl Into<String>) -> Self {
        assert_eq!(grid.len(), values.len(), "grid and values must have equal length");
        Self {
            grid,
            values,
            grid_label: grid_label.into(),
            value_label: value_label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &T)> {
        self.grid.iter().copied().zip(&self.values)
    }
}

impl GridFunction<f64> {
    /// Trapezoid rule over the grid.
    pub fn trapezoid(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}
