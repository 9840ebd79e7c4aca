use num_complex::Complex64;

use super::params::DunklParams;
use crate::specfun::normalized_j;

/// The rank-one Dunkl kernel E_k(iλx) = 𝒥_{k−1/2}(λx) + i λx/(2k+1) 𝒥_{k+1/2}(λx).
pub fn dunkl_kernel(lambda: f64, x: f64, params: &DunklParams) -> Complex64 {
    let k = params.k;
    let z = lambda * x;
    Complex64::new(
        normalized_j(k - 0.5, z),
        z / (2.0 * k + 1.0) * normalized_j(k + 0.5, z),
    )
}
