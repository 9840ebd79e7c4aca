//! Normalization constants shared by every route.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{abs_gamma_neg_half_open, gamma};
use crate::error::{domain, Error, Result};

/// Orders closer than this to the ends of (0,2) are accepted but flagged.
pub const ILL_CONDITIONED_MARGIN: f64 = 0.05;

/// Surface integral of the weight over the unit sphere, ∫_{S^{d−1}} w_k dσ.
pub fn sphere_mass(k: f64, d: u32) -> f64 {
    let d = d as f64;
    2.0 * PI.powf(0.5 * (d - 1.0)) * gamma(k + 0.5) / gamma(k + 0.5 * d)
}

/// The Macdonald-Mehta constant c_k = ∫ e^{−|x|²/2} w_k(x) dx.
pub fn macdonald_constant(k: f64, d: u32) -> f64 {
    let df = d as f64;
    2f64.powf(k + 0.5 * df) * PI.powf(0.5 * (df - 1.0)) * gamma(k + 0.5)
}

/// Pointwise constant of the classical fractional Laplacian in ℝ^d.
pub fn classical_constant(d: u32, alpha: f64) -> f64 {
    let d = d as f64;
    PI.powf(0.5 * d) * abs_gamma_neg_half_open(0.5 * alpha)
        / (2f64.powf(alpha) * gamma(0.5 * (d + alpha)))
}

/// All constants attached to a (k, d, α) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantSet {
    pub k: f64,
    pub d: u32,
    pub alpha: f64,
    pub c_k: f64,
    pub sigma_k_d: f64,
    pub gamma_kd_alpha: f64,
    pub pi_kd_alpha: f64,
    pub varsigma_alpha: f64,
    pub d_k_alpha: f64,
    pub b_k_alpha: f64,
}

impl ConstantSet {
    pub fn new(k: f64, d: u32, alpha: f64) -> Result<Self> {
        validate_kd(k, d)?;
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        let df = d as f64;
        let h = k + 0.5 * df;
        let c_k = macdonald_constant(k, d);
        let sigma_k_d = sphere_mass(k, d);
        let abs_g = abs_gamma_neg_half_open(0.5 * alpha);
        let gamma_kd_alpha =
            c_k * abs_g / (2f64.powf(alpha + h) * gamma(h + 0.5 * alpha));
        let pi_kd_alpha = gamma_kd_alpha / (2.0 * sigma_k_d);
        let varsigma_alpha =
            2f64.powf(alpha + 1.0) * gamma(h + 0.5 * alpha) / (PI.sqrt() * gamma(h) * abs_g);
        let d_k_alpha = riesz_constant(k, d, alpha);
        let b_k_alpha = 2f64.powf(h) * gamma(h + 0.5 * alpha) / (c_k * gamma(0.5 * alpha));
        Ok(Self {
            k,
            d,
            alpha,
            c_k,
            sigma_k_d,
            gamma_kd_alpha,
            pi_kd_alpha,
            varsigma_alpha,
            d_k_alpha,
            b_k_alpha,
        })
    }

    /// True when α sits within [`ILL_CONDITIONED_MARGIN`] of 0 or 2.
    pub fn ill_conditioned(&self) -> bool {
        self.alpha <= ILL_CONDITIONED_MARGIN || self.alpha >= 2.0 - ILL_CONDITIONED_MARGIN
    }

    /// 2^{α+1}Γ(k+(α+1)/2) / (Γ(k+1/2)|Γ(−α/2)|), the rank-one prefactor; equals 2/γ_{k,1}(α).
    pub fn rank_one_prefactor(&self) -> f64 {
        let a = self.alpha;
        2f64.powf(a + 1.0) * gamma(self.k + 0.5 * (a + 1.0))
            / (gamma(self.k + 0.5) * abs_gamma_neg_half_open(0.5 * a))
    }

    /// Spectral value of the operator on e^{−|x|²/2} at the origin.
    pub fn gaussian_origin_value(&self) -> f64 {
        let h = self.k + 0.5 * self.d as f64;
        2f64.powf(0.5 * self.alpha) * gamma(h + 0.5 * self.alpha) / gamma(h)
    }
}

/// d_k(α) = Γ(γ+(d−α)/2) / (c_k 2^{α−γ−d/2} Γ(α/2)) for α outside the pole sets; 1 at α = −2p.
pub fn riesz_constant(k: f64, d: u32, alpha: f64) -> f64 {
    if alpha <= 0.0 && (alpha / 2.0) == (alpha / 2.0).floor() {
        return 1.0;
    }
    let h = k + 0.5 * d as f64;
    gamma(h - 0.5 * alpha) / (macdonald_constant(k, d) * 2f64.powf(alpha - h) * gamma(0.5 * alpha))
}

pub(crate) fn validate_kd(k: f64, d: u32) -> Result<()> {
    if !(k >= 0.0 && k.is_finite()) {
        return domain(format!("multiplicity k = {k} must be a finite nonnegative number"));
    }
    if d == 0 {
        return domain("dimension d must be at least 1");
    }
    Ok(())
}
