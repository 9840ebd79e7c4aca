//! Dunkl convolution f ∗_k g = F⁻¹(c_k F f · F g).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::function::{Decay, TestFunction};
use super::heat::weighted_line_integral;
use super::params::DunklParams;
use super::spectrum::{frequency_cutoff, SpectralGrid, Spectrum};
use super::translate::translate;
use super::Estimate;
use crate::budget::Budget;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvolutionMode {
    /// Product of the two spectra on a common grid.
    Spectral,
    /// ∫ τ^x f(−y) g(y) w_k(y) dy.
    Direct,
}

pub fn convolve(
    f: &TestFunction,
    g: &TestFunction,
    x: f64,
    params: &DunklParams,
    mode: ConvolutionMode,
    budget: &Budget,
) -> Result<Estimate> {
    if f.decay() == Decay::Constant && g.decay() == Decay::Constant {
        return domain("the convolution of two constants diverges");
    }
    match mode {
        ConvolutionMode::Spectral => {
            let nu = params.bessel_order();
            let cutoff = frequency_cutoff(f.decay(), nu, budget).min(frequency_cutoff(g.decay(), nu, budget));
            let grid = Arc::new(SpectralGrid::new(cutoff, budget.x_max.max(x.abs()), budget)?);
            let sf = Spectrum::on_grid(f, params, Arc::clone(&grid), budget)?;
            let sg = Spectrum::on_grid(g, params, grid, budget)?;
            Ok(sf.product(&sg, params.c_k())?.apply(|_| 1.0, x).into())
        }
        ConvolutionMode::Direct => {
            let r = weighted_line_integral(
                |y| Ok(translate(f, x, -y, params, budget)? * g.eval(y)),
                g.decay(),
                f.decay(),
                x,
                params,
                budget,
            )?;
            Ok(r.into())
        }
    }
}
