//! Half-line integrals and the annulus (two-interval) integral.

use serde::{Deserialize, Serialize};

use super::adaptive::{integrate, integrate_graded, Integral, Tolerance};
use crate::error::{domain, Error, Result};

/// Truncation policy for ∫_0^∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBudget {
    /// Hard cutoff R for explicit panels.
    pub cutoff: f64,
    /// Stop once a doubling panel contributes less than this fraction of the running total.
    pub rel_tail: f64,
    /// Maximum number of doubling panels.
    pub max_levels: usize,
    /// Width of the first panel [0, first_panel], integrated with grading.
    pub first_panel: f64,
    /// Behaviour t^{e} of the integrand at 0.
    pub near_exponent: f64,
    /// Never stop before this abscissa (integrands whose mass sits away from 0).
    pub min_extent: f64,
    /// Integrand decays like t^{−p} (p > 1): the tail past `min_extent` is mapped onto a
    /// finite interval by t = 1/s instead of being truncated.
    pub algebraic_decay: Option<f64>,
    pub tol: Tolerance,
}

impl Default for TailBudget {
    fn default() -> Self {
        Self {
            cutoff: 1e4,
            rel_tail: 1e-16,
            max_levels: 60,
            first_panel: 1.0,
            near_exponent: 0.0,
            min_extent: 0.0,
            algebraic_decay: None,
            tol: Tolerance::default(),
        }
    }
}

impl TailBudget {
    pub fn with_near_exponent(mut self, e: f64) -> Self {
        self.near_exponent = e;
        self
    }

    pub fn with_first_panel(mut self, w: f64) -> Self {
        self.first_panel = w;
        self
    }

    pub fn with_min_extent(mut self, r: f64) -> Self {
        self.min_extent = r;
        self
    }

    pub fn with_algebraic_decay(mut self, p: f64) -> Self {
        self.algebraic_decay = Some(p);
        self
    }

    pub fn with_tol(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }
}

/// Outcome of a half-line integration: the integral plus the discarded-tail estimate
/// (already folded into `abs_err`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfLine {
    pub integral: Integral,
    pub tail_estimate: f64,
    pub extent: f64,
}

/// ∫_0^∞ f(t) dt.
///
/// A graded first panel handles the t^{e} behaviour at 0; panels then double in width
/// until one contributes less than `rel_tail` of the total (that panel's magnitude
/// is taken as the bound on the remainder) or, for algebraic decay, until
/// `min_extent`, after which the remainder is integrated exactly in the variable 1/t.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, budget: &TailBudget) -> Result<HalfLine> {
    let tol = budget.tol;
    let mut a = budget.first_panel.min(budget.cutoff);
    if !(a > 0.0) {
        return domain("first panel width must be positive");
    }
    let mut total = integrate_graded(&f, 0.0, a, budget.near_exponent, tol)?;
    for _ in 0..budget.max_levels {
        if let Some(p) = budget.algebraic_decay {
            if a >= budget.min_extent {
                if !(p > 1.0) {
                    return domain(format!("algebraic decay exponent {p} is not integrable"));
                }
                let inv = 1.0 / a;
                let tail = integrate_graded(
                    |s: f64| if s <= 0.0 { 0.0 } else { f(1.0 / s) / (s * s) },
                    0.0,
                    inv,
                    p - 2.0,
                    tol,
                )?;
                return Ok(HalfLine {
                    integral: total.add(tail),
                    tail_estimate: 0.0,
                    extent: f64::INFINITY,
                });
            }
        }
        if a >= budget.cutoff {
            break;
        }
        let b = (2.0 * a).min(budget.cutoff);
        let panel = integrate(&f, a, b, tol)?;
        total = total.add(panel);
        a = b;
        let small = panel.value.abs() + panel.abs_err
            <= budget.rel_tail * total.value.abs() + tol.abs;
        if small && a >= budget.min_extent && budget.algebraic_decay.is_none() {
            let tail = panel.value.abs();
            let integral = Integral { abs_err: total.abs_err + tail, ..total };
            return Ok(HalfLine { integral, tail_estimate: tail, extent: a });
        }
    }
    Err(Error::Accuracy {
        requested: budget.rel_tail * total.value.abs() + tol.abs,
        achieved: f(a).abs() * a,
    })
}

/// ∫ f over {eps ≤ |y| ≤ R}, as the sum of the two intervals.
pub fn annulus_integral<F: Fn(f64) -> f64>(f: F, eps: f64, r: f64, tol: Tolerance) -> Result<Integral> {
    if !(eps > 0.0) {
        return domain(format!("inner radius {eps} must be positive"));
    }
    if !(eps < r) {
        return domain(format!("inner radius {eps} must be below the outer radius {r}"));
    }
    let left = integrate(&f, -r, -eps, tol)?;
    let right = integrate(&f, eps, r, tol)?;
    Ok(left.add(right))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential() {
        let r = integrate_semi_infinite(|t| (-t).exp(), &TailBudget::default()).unwrap();
        assert!((r.integral.value - 1.0).abs() < 1e-13);
        assert!(r.integral.abs_err < 1e-10);
    }

    #[test]
    fn algebraic_tail_by_inversion() {
        let b = TailBudget::default().with_algebraic_decay(2.0);
        let r = integrate_semi_infinite(|t| 1.0 / (1.0 + t * t), &b).unwrap();
        assert!((r.integral.value - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn slow_algebraic_without_inversion_exhausts_budget() {
        let b = TailBudget { cutoff: 1e3, ..TailBudget::default() };
        let r = integrate_semi_infinite(|t| 1.0 / (1.0 + t * t), &b);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }

    #[test]
    fn annulus_examples() {
        let tol = Tolerance::default();
        let odd = annulus_integral(|y| y.powi(3) * (-y * y).exp(), 0.1, 3.0, tol).unwrap();
        assert!(odd.value.abs() < 1e-15);
        let r = annulus_integral(|y: f64| 1.0 / y.abs().sqrt(), 0.01, 1.0, tol).unwrap();
        assert!((r.value - 3.6).abs() < 1e-12);
        assert!(annulus_integral(|y| y, 1.0, 1.0, tol).is_err());
    }
}
