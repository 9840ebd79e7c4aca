//! Pointwise Dunkl transform and its inverse.

use num_complex::Complex64;

use super::function::{Parity, TestFunction};
use super::params::DunklParams;
use super::spectrum::{hankel_even, hankel_odd};
use crate::quadrature::Tolerance;
use crate::error::Result;

/// F_k u(ξ) = A(|ξ|) − i sgn(ξ) B(|ξ|), computed by quadrature (a known closed form is
/// ignored). The second component is the absolute error estimate.
pub fn dunkl_transform(u: &TestFunction, xi: f64, params: &DunklParams, tol: Tolerance) -> Result<(Complex64, f64)> {
    let nu = params.bessel_order();
    let s = xi.abs();
    let a = if u.parity() != Parity::Odd {
        hankel_even(&|r| u.even_part(r), nu, s, u.decay(), tol)?
    } else {
        crate::quadrature::Integral::zero()
    };
    let b = if u.parity() != Parity::Even {
        hankel_odd(&|r| u.odd_part(r), nu, s, u.decay(), tol)?
    } else {
        crate::quadrature::Integral::zero()
    };
    Ok((Complex64::new(a.value, -xi.signum() * b.value), a.abs_err + b.abs_err))
}

/// F_k⁻¹ g(x) = F_k g(−x) for a real g.
pub fn inverse_dunkl_transform(g: &TestFunction, x: f64, params: &DunklParams, tol: Tolerance) -> Result<(Complex64, f64)> {
    dunkl_transform(g, -x, params, tol)
}
