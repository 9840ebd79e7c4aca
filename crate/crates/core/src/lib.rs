//! Fractional powers of the Dunkl Laplacian.
//!
//! The operator (−Δ_k)^{α/2} is evaluated in the rank-one setting (reflection group ℤ₂ on ℝ)
//! and for radial functions in ℝ^d by five independent routes: the transform-side
//! multiplier, the second-difference singular integral, spherical means, heat-semigroup
//! subordination and the Neumann data of an extension problem. [`fraclap::cross_check`]
//! compares them point by point.

pub mod budget;
pub mod dist;
pub mod dunkl1d;
pub mod error;
pub mod exec;
pub mod extension;
pub mod fraclap;
pub mod quadrature;
pub mod radial;
pub mod specfun;

pub use error::{Error, Result};
pub use exec::Execution;
