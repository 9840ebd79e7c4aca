//! Rank-one Dunkl analysis: parameters, test functions, kernel, operators, transform,
//! translation, heat semigroup and convolution.

mod convolve;
mod function;
mod heat;
mod kernel;
mod operators;
mod params;
mod spectrum;
mod transform;
mod translate;

use serde::{Deserialize, Serialize};

use crate::quadrature::Integral;

pub use convolve::{convolve, ConvolutionMode};
pub use function::{
    bump_gaussian, constant, gaussian, gaussian_with_rate, mollified_constant, odd_gaussian_with_rate,
    poly_gaussian, quadratic_gaussian, Decay, Parity, RealFn, TestFunction, TransformFn,
};
pub use heat::{heat_kernel, heat_kernel_function, heat_semigroup, HeatMode};
pub use kernel::dunkl_kernel;
pub use operators::{dunkl_derivative, dunkl_laplacian_1d};
pub use params::{weight, DunklParams};
pub use spectrum::{
    frequency_cutoff, hankel_even, hankel_norm, hankel_odd, SpectralGrid, SpectralPoint, Spectrum,
};
pub use transform::{dunkl_transform, inverse_dunkl_transform};
pub use translate::{pizzetti_coefficient, spherical_mean_1d, translate, translation_nodes};

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, abs_err: 0.0 }
    }
}

impl From<(f64, f64)> for Estimate {
    fn from((value, abs_err): (f64, f64)) -> Self {
        Self { value, abs_err }
    }
}

impl From<Integral> for Estimate {
    fn from(i: Integral) -> Self {
        Self { value: i.value, abs_err: i.abs_err }
    }
}
