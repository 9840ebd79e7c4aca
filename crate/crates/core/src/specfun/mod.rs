//! Special functions and normalization constants.

mod bessel;
mod constants;
mod gamma;

pub use bessel::{
    bessel, bessel_i, bessel_j, bessel_j_zeros, bessel_k, bessel_y, normalized_j, BesselKind,
};
pub use constants::{
    classical_constant, macdonald_constant, riesz_constant, sphere_mass, ConstantSet,
    ILL_CONDITIONED_MARGIN,
};
pub(crate) use constants::validate_kd;
pub use gamma::{abs_gamma_neg_half_open, gamma, ln_gamma, pochhammer, recip_gamma};
