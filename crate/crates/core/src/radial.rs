//! Radial calculus in ℝ^d: Fourier–Bessel transform, Bessel translation and the
//! fractional operator on radial functions u(x) = u_0(|x|).

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::dunkl1d::{hankel_even, DunklParams, Decay, Estimate, Parity, Spectrum, TestFunction};
use crate::error::{domain, Error, Result};
use crate::quadrature::{gauss_jacobi_cached, integrate, Integral, Tolerance};
use crate::specfun::{abs_gamma_neg_half_open, gamma};

/// A radial profile u_0 on [0, ∞), tied to the Bessel order ν = γ_k + d/2 − 1.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    function: TestFunction,
    nu: f64,
}

impl RadialProfile {
    pub fn new(
        label: impl Into<String>,
        decay: Decay,
        nu: f64,
        f0: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let function = TestFunction::new(label, decay, move |x| f0(x.abs()));
        Self::from_function(function, nu)
    }

    /// Wraps an even function on ℝ; its restriction to [0, ∞) is the profile.
    pub fn from_function(function: TestFunction, nu: f64) -> Result<Self> {
        if !(nu > -1.0) {
            return domain(format!("Bessel order {nu} must exceed -1"));
        }
        if !function.eval(0.0).is_finite() {
            return Err(Error::NonFinite { abscissa: 0.0 });
        }
        let function = if function.parity() == Parity::Even {
            function
        } else {
            function.with_parity(Parity::Even)?
        };
        Ok(Self { function, nu })
    }

    /// Profile matched to the parameters (ν = γ_k + d/2 − 1).
    pub fn for_params(function: TestFunction, params: &DunklParams) -> Result<Self> {
        Self::from_function(function, params.bessel_order())
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.function.eval(r)
    }

    pub fn order(&self) -> f64 {
        self.nu
    }

    pub fn decay(&self) -> Decay {
        self.function.decay()
    }

    pub fn label(&self) -> &str {
        self.function.label()
    }

    /// The even extension to ℝ.
    pub fn as_function(&self) -> &TestFunction {
        &self.function
    }

    /// r ↦ u_0(s·r).
    pub fn dilate(&self, s: f64) -> Self {
        Self { function: self.function.dilate(s), nu: self.nu }
    }

    /// (∂_r² + (2ν+1)/r ∂_r) u_0, the radial part of the weighted Laplacian.
    pub fn bessel_laplacian(&self, r: f64) -> f64 {
        let f = &self.function;
        if r.abs() < 1e-6 * self.decay().scale() {
            (2.0 * self.nu + 2.0) * f.second_derivative(0.0)
        } else {
            f.second_derivative(r) + (2.0 * self.nu + 1.0) / r * f.derivative(r)
        }
    }
}

/// 2^{−ν}/Γ(ν+1) ∫_0^∞ f_0(s) 𝒥_ν(rs) s^{2ν+1} ds.
pub fn fourier_bessel(f0: &RadialProfile, r: f64, tol: Tolerance) -> Result<Estimate> {
    if r < 0.0 {
        return domain(format!("frequency {r} must be nonnegative"));
    }
    Ok(hankel_even(&|s| f0.eval(s), f0.nu, r, f0.decay(), tol)?.into())
}

/// T^r f_0(ρ) = c(ν) ∫_0^π f_0(√(r² + ρ² − 2rρ cos θ)) sin^{2ν}θ dθ with
/// c(ν) = Γ(ν+1)/(√π Γ(ν+1/2)), so that F^B(T^r f_0)(ξ) = 𝒥_ν(rξ) F^B f_0(ξ).
pub fn bessel_translate(f0: &RadialProfile, r: f64, rho: f64, budget: &Budget) -> Result<f64> {
    let nu = f0.nu;
    if !(nu > -0.5) {
        return domain(format!("Bessel translation needs order above -1/2, got {nu}"));
    }
    if r < 0.0 || rho < 0.0 {
        return domain("radii must be nonnegative");
    }
    if r == 0.0 || rho == 0.0 {
        return Ok(f0.eval(r + rho));
    }
    if f0.decay() == Decay::Constant {
        return Ok(f0.eval(0.0));
    }
    let n = crate::dunkl1d::translation_nodes(f0.as_function(), r, rho, budget)?;
    // t = cos θ: sin^{2ν}θ dθ = (1 − t²)^{ν−1/2} dt.
    let rule = gauss_jacobi_cached(n, nu - 0.5, nu - 0.5)?;
    let mass: f64 = rule.weights().iter().sum();
    let acc: f64 = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&t, &w)| w * f0.eval((r * r + rho * rho - 2.0 * r * rho * t).max(0.0).sqrt()))
        .sum();
    Ok(acc / mass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialMode {
    /// Fourier–Bessel multiplier |ξ|^α.
    Spectral,
    /// ∫_0^∞ [u_0(|x|) − T^{|x|}u_0(r)] r^{−1−α} dr.
    Translation,
}

/// Constant of the translation form: √π ς_k(α) = 2^{α+1}Γ(h+α/2)/(Γ(h)|Γ(−α/2)|) with
/// h = ν + 1, for the probability-normalized θ measure.
pub fn radial_route_constant(nu: f64, alpha: f64) -> f64 {
    let h = nu + 1.0;
    2f64.powf(alpha + 1.0) * gamma(h + 0.5 * alpha) / (gamma(h) * abs_gamma_neg_half_open(0.5 * alpha))
}

/// (−Δ_k)^{α/2} u at any x with |x| = `x_norm`, for u(x) = u_0(|x|).
pub fn radial_frac_laplacian(
    u0: &RadialProfile,
    x_norm: f64,
    alpha: f64,
    params: &DunklParams,
    mode: RadialMode,
    budget: &Budget,
) -> Result<Estimate> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    if (u0.nu - params.bessel_order()).abs() > 1e-12 {
        return domain(format!(
            "profile order {} does not match the parameters' order {}",
            u0.nu,
            params.bessel_order()
        ));
    }
    if x_norm < 0.0 {
        return domain(format!("|x| = {x_norm} must be nonnegative"));
    }
    if u0.decay() == Decay::Constant {
        return Ok(Estimate::exact(0.0));
    }
    match mode {
        RadialMode::Spectral => {
            let spec = Spectrum::compute(u0.as_function(), params, budget.x_max.max(x_norm), budget)?;
            Ok(spec.apply(|xi| xi.powf(alpha), x_norm).into())
        }
        RadialMode::Translation => translation_route(u0, x_norm, alpha, budget),
    }
}

fn translation_route(u0: &RadialProfile, x: f64, alpha: f64, budget: &Budget) -> Result<Estimate> {
    let ux = u0.eval(x);
    let cut = budget.taylor_cutoff;
    let nu = u0.nu;
    let near = -u0.bessel_laplacian(x) / (4.0 * (nu + 1.0)) * cut.powf(2.0 - alpha) / (2.0 - alpha);
    let failure = RefCell::new(None);
    let f = |r: f64| match bessel_translate(u0, x, r, budget) {
        Ok(t) => (ux - t) * r.powf(-1.0 - alpha),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let outer = match u0.decay().support_radius() {
        Some(radius) => radius + x,
        None => return domain("the translation route needs a profile with bounded effective support"),
    };
    let mut breaks = vec![cut, 1.0_f64.max(cut), outer];
    if x > cut && x < outer {
        breaks.push(x);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut total = Integral::zero();
    for w in breaks.windows(2) {
        total = total.add(integrate(f, w[0], w[1], budget.tol)?);
    }
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let tail = ux * outer.powf(-alpha) / alpha;
    let c = radial_route_constant(nu, alpha);
    Ok(Estimate { value: c * (near + total.value + tail), abs_err: c * total.abs_err })
}
