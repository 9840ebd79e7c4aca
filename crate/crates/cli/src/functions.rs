//! Test functions selectable from the command line, including tabulated data.

use std::path::Path;
use std::sync::Arc;

use dunkl_frac::dunkl1d::{gaussian, mollified_constant, poly_gaussian, Decay, Parity, TestFunction};

use crate::config::{FunctionId, RunConfig};
use crate::error::{usage, CliError, Result};

/// Cubic spline through (x_i, y_i). The left end is clamped to zero slope when the table
/// starts at x = 0 (an even profile), natural otherwise; the right end is natural.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the nodes.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>, clamped_left: bool) -> Result<Self> {
        let n = x.len();
        if n < 4 || y.len() != n {
            return usage(format!("a table needs at least 4 rows, got {n}"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return usage("table abscissae must be strictly increasing");
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return usage("table entries must be finite");
        }
        // Tridiagonal system for the second derivatives, solved by the Thomas algorithm.
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        let mut lower = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        if clamped_left {
            diag[0] = h[0] / 3.0;
            upper[0] = h[0] / 6.0;
            rhs[0] = (y[1] - y[0]) / h[0];
        } else {
            diag[0] = 1.0;
        }
        for i in 1..n - 1 {
            lower[i] = h[i - 1] / 6.0;
            diag[i] = (h[i - 1] + h[i]) / 3.0;
            upper[i] = h[i] / 6.0;
            rhs[i] = (y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1];
        }
        diag[n - 1] = 1.0;
        for i in 1..n {
            let w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }
        Ok(Self { x, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    fn segment(&self, t: f64) -> Option<(usize, f64, f64, f64)> {
        let (a, b) = self.domain();
        if !(t >= a && t <= b) {
            return None;
        }
        let i = self.x.partition_point(|&xi| xi <= t).clamp(1, self.x.len() - 1) - 1;
        let h = self.x[i + 1] - self.x[i];
        Some((i, h, (self.x[i + 1] - t) / h, (t - self.x[i]) / h))
    }

    /// Spline value; zero outside the tabulated range.
    pub fn eval(&self, t: f64) -> f64 {
        let Some((i, h, a, b)) = self.segment(t) else { return 0.0 };
        a * self.y[i] + b * self.y[i + 1] + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let Some((i, h, a, b)) = self.segment(t) else { return 0.0 };
        (self.y[i + 1] - self.y[i]) / h
            + ((1.0 - 3.0 * a * a) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]) * h / 6.0
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        let Some((i, _, a, b)) = self.segment(t) else { return 0.0 };
        a * self.m[i] + b * self.m[i + 1]
    }
}

/// Reads `x,value` rows; an optional header row is skipped.
pub fn read_table(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(file);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if record.len() != 2 {
            return usage(format!("{}: row {} must have two columns x,value", path.display(), i + 1));
        }
        match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ if i == 0 => continue,
            _ => return usage(format!("{}: row {} is not numeric", path.display(), i + 1)),
        }
    }
    Ok((xs, ys))
}

/// Tabulated data as a test function. A table starting at x = 0 is read as an even
/// profile u(|x|); otherwise it must cover both signs of x. Outside the tabulated range
/// the function is cut off to zero, so the data should decay to zero at both ends.
pub fn user_table(path: &Path) -> Result<TestFunction> {
    let (x, y) = read_table(path)?;
    let even = x.first().is_some_and(|&x0| x0 == 0.0);
    if !even && x.first().is_some_and(|&x0| x0 > 0.0) {
        return usage(format!("{}: a table must start at x = 0 (even profile) or cover negative x", path.display()));
    }
    let spline = Arc::new(CubicSpline::new(x, y, even)?);
    let (a, b) = spline.domain();
    let radius = if even { b } else { a.abs().max(b) };
    let label = format!("user-table({})", path.display());
    let (s0, s1, s2) = (spline.clone(), spline.clone(), spline.clone());
    let f = if even {
        TestFunction::new(label, Decay::Compact { radius }, move |x| s0.eval(x.abs()))
            .with_derivative(move |x| x.signum() * s1.derivative(x.abs()))
            .with_second_derivative(move |x| s2.second_derivative(x.abs()))
            .with_taylor(vec![spline.eval(0.0), 0.5 * spline.second_derivative(0.0)])
            .with_parity(Parity::Even)?
    } else {
        TestFunction::new(label, Decay::Compact { radius }, move |x| s0.eval(x))
            .with_derivative(move |x| s1.derivative(x))
            .with_second_derivative(move |x| s2.second_derivative(x))
    };
    Ok(f)
}

pub fn build(config: &RunConfig) -> Result<TestFunction> {
    Ok(match config.function {
        FunctionId::Gaussian => gaussian(),
        FunctionId::MollifiedConstant => mollified_constant(config.width),
        FunctionId::PolyGaussian => poly_gaussian(),
        FunctionId::UserTable => {
            let path = config.data.as_deref().ok_or_else(|| CliError::Usage("user-table needs a data file".into()))?;
            user_table(path)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_tracks_a_dense_gaussian_profile() {
        let x: Vec<f64> = (0..=200).map(|i| i as f64 * 0.05).collect();
        let y: Vec<f64> = x.iter().map(|t| (-t * t).exp()).collect();
        let s = CubicSpline::new(x, y, true).unwrap();
        for t in [0.0, 0.37, 1.21, 2.5, 4.0] {
            assert!((s.eval(t) - (-t * t).exp()).abs() < 1e-6, "t={t}");
            assert!((s.derivative(t) + 2.0 * t * (-t * t).exp()).abs() < 1e-4, "t={t}");
        }
        assert_eq!(s.eval(10.5), 0.0);
        assert_eq!(s.eval(-0.1), 0.0);
    }

    #[test]
    fn spline_interpolates_the_nodes() {
        let x = vec![-1.0, -0.2, 0.4, 1.0, 2.5];
        let y = vec![0.0, 1.0, -0.5, 2.0, 0.0];
        let s = CubicSpline::new(x.clone(), y.clone(), false).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((s.eval(*a) - b).abs() < 1e-14);
        }
        assert!(s.second_derivative(-1.0).abs() < 1e-14 && s.second_derivative(2.5).abs() < 1e-14);
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(CubicSpline::new(vec![0.0, 1.0, 2.0], vec![1.0; 3], false).is_err());
        assert!(CubicSpline::new(vec![0.0, 1.0, 1.0, 2.0], vec![1.0; 4], false).is_err());
        assert!(CubicSpline::new(vec![0.0, 1.0, 2.0, f64::NAN], vec![1.0; 4], false).is_err());
    }
}
