//! Generalized translation τ^x and spherical means in rank one.

use super::function::{Decay, TestFunction};
use super::params::DunklParams;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::quadrature::gauss_jacobi_cached;

/// Number of Gauss–Jacobi nodes for a translation at (x, y): the smallest power of two
/// in the budget range with 2n − 1 ≥ c + 12c^{1/3} + 24, where c = 2·rate·|xy|.
pub fn translation_nodes(u: &TestFunction, x: f64, y: f64, budget: &Budget) -> Result<usize> {
    let rate = match u.decay() {
        Decay::Gaussian { rate } => rate,
        d => 0.5 / (d.scale() * d.scale()),
    };
    let c = 2.0 * rate * (x * y).abs();
    let needed = c + 12.0 * c.cbrt() + 24.0;
    let mut n = budget.jacobi_min_nodes.max(1);
    while ((2 * n - 1) as f64) < needed {
        if n >= budget.jacobi_max_nodes {
            return Err(Error::Accuracy { requested: needed, achieved: (2 * n - 1) as f64 });
        }
        n = (2 * n).min(budget.jacobi_max_nodes);
    }
    Ok(n)
}

/// τ^x u(y) = ∫_{−1}^{1} [u_e(r_t) + (x + y) u_o(r_t)/r_t] dμ_k(t), with
/// r_t = √(x² + y² − 2xyt) and dμ_k ∝ (1 − t)^k (1 + t)^{k−1} a probability measure.
/// For k = 0 it reduces to u(x + y).
pub fn translate(u: &TestFunction, x: f64, y: f64, params: &DunklParams, budget: &Budget) -> Result<f64> {
    let k = params.k;
    if k == 0.0 || x == 0.0 || y == 0.0 {
        return Ok(u.eval(x + y));
    }
    if u.decay() == Decay::Constant {
        return Ok(u.eval(0.0));
    }
    let n = translation_nodes(u, x, y, budget)?;
    let rule = gauss_jacobi_cached(n, k, k - 1.0)?;
    let mass: f64 = rule.weights().iter().sum();
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let r = (x * x + y * y - 2.0 * x * y * t).max(0.0).sqrt();
        acc += w * (u.even_part(r) + (x + y) * u.odd_quotient(r));
    }
    let v = acc / mass;
    if !v.is_finite() {
        return Err(Error::NonFinite { abscissa: y });
    }
    Ok(v)
}

/// M_r u(x) = (τ^x u(r) + τ^x u(−r))/2.
pub fn spherical_mean_1d(u: &TestFunction, x: f64, r: f64, params: &DunklParams, budget: &Budget) -> Result<f64> {
    Ok(0.5 * (translate(u, x, r, params, budget)? + translate(u, x, -r, params, budget)?))
}

/// Coefficient of r^{2j}Δ_k^j u(x) in the small-r expansion of the spherical mean,
/// 1/(4^j j! (γ_k + d/2)_j).
pub fn pizzetti_coefficient(j: usize, params: &DunklParams) -> f64 {
    let h = params.half_dim();
    (0..j).fold(1.0, |c, i| c / (4.0 * (i + 1) as f64 * (h + i as f64)))
}
