//! Heat kernel and heat semigroup e^{tΔ_k}.

use serde::{Deserialize, Serialize};

use super::function::{gaussian_with_rate, Decay, TestFunction};
use super::params::{weight, DunklParams};
use super::spectrum::Spectrum;
use super::translate::translate;
use super::Estimate;
use crate::budget::Budget;
use crate::error::{domain, Result};
use crate::quadrature::{integrate, integrate_graded, Integral};

/// Γ_k(t, x) = e^{−x²/4t} / (c_k (2t)^{γ+d/2}); unit mass against w_k and
/// F_k Γ_k(t, ·) = e^{−tξ²}/c_k.
pub fn heat_kernel(t: f64, x: f64, params: &DunklParams) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("heat time {t} must be positive"));
    }
    Ok((-x * x / (4.0 * t)).exp() / (params.c_k() * (2.0 * t).powf(params.half_dim())))
}

/// Γ_k(t, ·) as a test function (with its closed-form transform).
pub fn heat_kernel_function(t: f64, params: &DunklParams) -> Result<TestFunction> {
    let scale = heat_kernel(t, 0.0, params)?;
    let g = gaussian_with_rate(1.0 / (4.0 * t));
    let label = format!("heat_kernel(t={t})");
    let gg = g.clone();
    Ok(TestFunction::new(label, g.decay(), move |x| scale * gg.eval(x))
        .with_parity(super::function::Parity::Even)?
        .with_transform(move |p, xi| g.known_transform(p, xi).unwrap_or_default() * scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeatMode {
    /// F⁻¹(e^{−tξ²} F u).
    Spectral,
    /// ∫ τ^x Γ_k(t, ·)(−y) u(y) w_k(y) dy.
    Translation,
}

/// e^{tΔ_k} u(x).
pub fn heat_semigroup(
    u: &TestFunction,
    t: f64,
    x: f64,
    params: &DunklParams,
    mode: HeatMode,
    budget: &Budget,
) -> Result<Estimate> {
    if !(t > 0.0) {
        return domain(format!("heat time {t} must be positive"));
    }
    if u.decay() == Decay::Constant {
        return Ok(Estimate::exact(u.eval(0.0)));
    }
    match mode {
        HeatMode::Spectral => {
            let spec = Spectrum::compute(u, params, budget.x_max.max(x.abs()), budget)?;
            Ok(spec.apply(|xi| (-t * xi * xi).exp(), x).into())
        }
        HeatMode::Translation => {
            let kernel = heat_kernel_function(t, params)?;
            let r = weighted_line_integral(
                |y| Ok(translate(&kernel, x, -y, params, budget)? * u.eval(y)),
                u.decay(),
                kernel.decay(),
                x,
                params,
                budget,
            )?;
            Ok(r.into())
        }
    }
}

/// ∫_ℝ g(y) w_k(y) dy where g inherits the decay of the two factors; the weight
/// singularity at 0 is handled by grading.
pub(crate) fn weighted_line_integral(
    g: impl Fn(f64) -> Result<f64>,
    a: Decay,
    b: Decay,
    x: f64,
    params: &DunklParams,
    budget: &Budget,
) -> Result<Integral> {
    let ra = a.support_radius();
    let rb = b.support_radius().map(|r| r + x.abs());
    let radius = match (ra, rb) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => return domain("direct integration needs one factor of bounded support"),
    };
    let failure = std::sync::Mutex::new(None);
    let f = |y: f64| match g(y) {
        Ok(v) => v * weight(y, params),
        Err(e) => {
            failure.lock().expect("poisoned").get_or_insert(e);
            0.0
        }
    };
    let e = 2.0 * params.k;
    let mut total = Integral::zero();
    for (lo, hi) in [(-radius, 0.0), (0.0, radius)] {
        let (s, inner) = if lo < 0.0 { (-1.0, -lo) } else { (1.0, hi) };
        let split = (0.5 * x.abs()).clamp(1e-3, inner);
        total = total.add(integrate_graded(|r| f(s * r), 0.0, split, e, budget.tol)?);
        if split < inner {
            total = total.add(integrate(|r| f(s * r), split, inner, budget.tol)?);
        }
    }
    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    Ok(total)
}
