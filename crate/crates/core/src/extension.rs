//! The extension problem Δ_k U + U_yy + ((1−α)/y) U_y = 0, U(·, 0) = u, its Poisson kernel,
//! and the weighted Neumann limit that recovers (−Δ_k)^{α/2} u.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::dunkl1d::{
    convolve, ConvolutionMode, Decay, DunklParams, Estimate, Parity, Spectrum, TestFunction,
};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_semi_infinite, richardson, TailBudget};
use crate::specfun::{bessel_k, gamma};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange { alpha })
    }
}

/// φ_α(z) = z^{α/2} K_{α/2}(z) / (2^{α/2−1} Γ(α/2)); φ_α(0) = 1 and φ_α decays like e^{−z}.
pub fn extension_multiplier(alpha: f64, z: f64) -> f64 {
    let s = 0.5 * alpha;
    let z = z.abs();
    if z == 0.0 {
        return 1.0;
    }
    if z > 700.0 {
        return 0.0;
    }
    z.powf(s) * bessel_k(s, z) / (2f64.powf(s - 1.0) * gamma(s))
}

/// p_{α,y}(x) = b_k(α) y^α / (y² + |x|²)^{γ_k + (d+α)/2}.
pub fn poisson_kernel(alpha: f64, y: f64, x: f64, params: &DunklParams) -> Result<f64> {
    check_alpha(alpha)?;
    if !(y > 0.0) {
        return domain(format!("extension variable y = {y} must be positive"));
    }
    let b = params.constants(alpha)?.b_k_alpha;
    Ok(b * y.powf(alpha) / (y * y + x * x).powf(params.half_dim() + 0.5 * alpha))
}

/// p_{α,y} as a test function; its transform φ_α(y|ξ|)/c_k is attached.
pub fn poisson_kernel_function(alpha: f64, y: f64, params: &DunklParams) -> Result<TestFunction> {
    let b = params.constants(alpha)?.b_k_alpha;
    poisson_kernel(alpha, y, 0.0, params)?;
    let e = params.half_dim() + 0.5 * alpha;
    let c_k = params.c_k();
    TestFunction::new(
        format!("poisson(alpha={alpha},y={y})"),
        Decay::Algebraic { exponent: 2.0 * e },
        move |x| b * y.powf(alpha) / (y * y + x * x).powf(e),
    )
    .with_transform(move |_, xi| Complex64::new(extension_multiplier(alpha, y * xi) / c_k, 0.0))
    .with_parity(Parity::Even)
}

/// ∫_{ℝ^d} p_{α,y} w_k, computed in polar form σ_k(d) ∫_0^∞ p(r) r^{2γ_k+d−1} dr.
pub fn poisson_mass(alpha: f64, y: f64, params: &DunklParams) -> Result<Estimate> {
    poisson_kernel(alpha, y, 0.0, params)?;
    let p = 2.0 * params.half_dim() - 1.0;
    let budget = TailBudget::default()
        .with_near_exponent(p)
        .with_first_panel(y)
        .with_min_extent(16.0 * y)
        .with_algebraic_decay(alpha + 1.0);
    let r = integrate_semi_infinite(
        |r| poisson_kernel(alpha, y, r, params).unwrap_or(f64::NAN) * r.powf(p),
        &budget,
    )?;
    let s = params.sphere_mass();
    Ok(Estimate { value: s * r.integral.value, abs_err: s * r.integral.abs_err })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionMode {
    /// F⁻¹[φ_α(y|ξ|) F u].
    Spectral,
    /// p_{α,y} ∗_k u.
    Convolution,
}

/// U(·, y) for one boundary datum, with a cache of spectral evaluations.
///
/// The cache is guarded by a read-write lock, so a solution can be shared across threads.
#[derive(Debug)]
pub struct ExtensionSolution {
    u: TestFunction,
    alpha: f64,
    params: DunklParams,
    budget: Budget,
    spectrum: Arc<Spectrum>,
    cache: RwLock<HashMap<(u64, u64), Estimate>>,
}

impl ExtensionSolution {
    pub fn new(u: &TestFunction, alpha: f64, params: &DunklParams, budget: &Budget) -> Result<Self> {
        let spectrum = Arc::new(Spectrum::compute(u, params, budget.x_max, budget)?);
        Self::with_spectrum(u, alpha, params, budget, spectrum)
    }

    /// Reuses an existing spectrum of `u`.
    pub fn with_spectrum(
        u: &TestFunction,
        alpha: f64,
        params: &DunklParams,
        budget: &Budget,
        spectrum: Arc<Spectrum>,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            u: u.clone(),
            alpha,
            params: *params,
            budget: budget.clone(),
            spectrum,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn boundary(&self) -> &TestFunction {
        &self.u
    }

    pub fn cached_points(&self) -> usize {
        self.cache.read().expect("extension cache poisoned").len()
    }

    /// U(x, y) from the spectral solver (cached).
    pub fn eval(&self, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return domain(format!("extension variable y = {y} must be positive"));
        }
        let key = (x.to_bits(), y.to_bits());
        if let Some(v) = self.cache.read().expect("extension cache poisoned").get(&key) {
            return Ok(*v);
        }
        let a = self.alpha;
        let v: Estimate = self.spectrum.apply(|xi| extension_multiplier(a, y * xi), x).into();
        self.cache.write().expect("extension cache poisoned").insert(key, v);
        Ok(v)
    }

    pub fn eval_with(&self, x: f64, y: f64, mode: ExtensionMode) -> Result<Estimate> {
        match mode {
            ExtensionMode::Spectral => self.eval(x, y),
            ExtensionMode::Convolution => {
                let p = poisson_kernel_function(self.alpha, y, &self.params)?;
                convolve(&p, &self.u, x, &self.params, ConvolutionMode::Direct, &self.budget)
            }
        }
    }

    /// Central difference [U(x, y+h) − U(x, y−h)]/(2h), h = y/8, taken inside one
    /// multiplier so the subtraction happens before the inverse transform.
    pub fn dy(&self, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return domain(format!("extension variable y = {y} must be positive"));
        }
        let h = y / 8.0;
        let a = self.alpha;
        let (v, e) = self.spectrum.apply(
            |xi| (extension_multiplier(a, (y + h) * xi) - extension_multiplier(a, (y - h) * xi)) / (2.0 * h),
            x,
        );
        Ok(Estimate { value: v, abs_err: e })
    }
}

/// One-off U(x, y).
pub fn solve_extension(
    u: &TestFunction,
    x: f64,
    y: f64,
    alpha: f64,
    params: &DunklParams,
    mode: ExtensionMode,
    budget: &Budget,
) -> Result<Estimate> {
    match mode {
        ExtensionMode::Spectral => ExtensionSolution::new(u, alpha, params, budget)?.eval(x, y),
        ExtensionMode::Convolution => {
            let p = poisson_kernel_function(alpha, y, params)?;
            convolve(&p, u, x, params, ConvolutionMode::Direct, budget)
        }
    }
}

/// −2^{α−1} Γ(α/2) / Γ(1 − α/2).
pub fn neumann_prefactor(alpha: f64) -> f64 {
    -(2f64.powf(alpha - 1.0)) * gamma(0.5 * alpha) / gamma(1.0 - 0.5 * alpha)
}

/// Geometric y-sequence scaled to the datum: y_0 = neumann_y0 · scale.
pub fn default_y_sequence(u: &TestFunction, budget: &Budget) -> Vec<f64> {
    let y0 = budget.neumann_y0 * u.decay().scale();
    (0..budget.neumann_count).map(|j| y0 * budget.neumann_ratio.powi(j as i32)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeumannLimit {
    /// −2^{α−1}Γ(α/2)/Γ(1−α/2) · lim y^{1−α} ∂_y U.
    pub value: f64,
    pub err: f64,
    /// Bias-corrected y^{1−α} ∂_y U at each y (before the prefactor).
    pub samples: Vec<f64>,
    /// Extrapolation diagonal (before the prefactor).
    pub diagonal: Vec<f64>,
}

/// Richardson limit of y^{1−α} ∂_y U(x, y) over a geometric y-sequence.
///
/// With h = y/8 the central difference maps y^α to α y^{α−1} F(α), F(α) =
/// [(9/8)^α − (7/8)^α]/(α/4); dividing by F(α) leaves error terms y^{2−α}, y², y^{4−α}, ….
pub fn neumann_limit(sol: &ExtensionSolution, x: f64, y_seq: &[f64]) -> Result<NeumannLimit> {
    if y_seq.len() < 2 {
        return domain("the y-sequence needs at least two entries");
    }
    let ratio = y_seq[1] / y_seq[0];
    for w in y_seq.windows(2) {
        if !(w[1] > 0.0 && w[1] < w[0]) || ((w[1] / w[0]) - ratio).abs() > 1e-12 * ratio {
            return domain("the y-sequence must be positive, decreasing and geometric");
        }
    }
    if y_seq.last().is_some_and(|&y| y < 1e-6) {
        return domain("y-sequence entries must be at least 1e-6");
    }
    let a = sol.alpha;
    if sol.u.decay() == Decay::Constant {
        return Ok(NeumannLimit { value: 0.0, err: 0.0, samples: vec![0.0; y_seq.len()], diagonal: vec![0.0] });
    }
    let bias = (1.125f64.powf(a) - 0.875f64.powf(a)) / (0.25 * a);
    let mut samples = Vec::with_capacity(y_seq.len());
    let mut noise: f64 = 0.0;
    for &y in y_seq {
        let d = sol.dy(x, y)?;
        let s = y.powf(1.0 - a) / bias;
        samples.push(s * d.value);
        noise = noise.max(s * d.abs_err);
    }
    let mut exponents = Vec::new();
    for j in 1..=y_seq.len() {
        exponents.push(2.0 * j as f64 - a);
        exponents.push(2.0 * j as f64);
    }
    let ex = richardson(&samples, ratio, &exponents)?;
    let steps: Vec<f64> = ex.diagonal.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let floor = 1e-11 * ex.value.abs().max(1e-300) + 10.0 * noise;
    let tail = &steps[steps.len().saturating_sub(3)..];
    let settled = tail.windows(2).all(|w| w[1] <= w[0] || w[1] <= floor);
    if !settled {
        return Err(Error::Convergence(format!(
            "Neumann extrapolation residuals are not decreasing: {steps:?} (samples {samples:?})"
        )));
    }
    let pre = neumann_prefactor(a);
    Ok(NeumannLimit {
        value: pre * ex.value,
        err: pre.abs() * (ex.err + noise),
        samples,
        diagonal: ex.diagonal,
    })
}
