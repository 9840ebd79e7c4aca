use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::specfun::{macdonald_constant, sphere_mass, validate_kd, ConstantSet};

/// Multiplicity and dimension. For d ≥ 2 the weight is |x_1|^{2k} (one reflection), so the
/// homogeneity γ_k equals k in every dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DunklParams {
    pub k: f64,
    pub d: u32,
}

impl DunklParams {
    pub fn new(k: f64, d: u32) -> Result<Self> {
        validate_kd(k, d)?;
        Ok(Self { k, d })
    }

    /// Rank-one parameters (d = 1).
    pub fn rank_one(k: f64) -> Result<Self> {
        Self::new(k, 1)
    }

    pub fn gamma_k(&self) -> f64 {
        self.k
    }

    /// γ_k + d/2, the half-dimension of the weighted space.
    pub fn half_dim(&self) -> f64 {
        self.k + 0.5 * self.d as f64
    }

    /// Order ν = γ_k + d/2 − 1 of the radial Bessel kernel.
    pub fn bessel_order(&self) -> f64 {
        self.half_dim() - 1.0
    }

    pub fn c_k(&self) -> f64 {
        macdonald_constant(self.k, self.d)
    }

    pub fn sphere_mass(&self) -> f64 {
        sphere_mass(self.k, self.d)
    }

    pub fn constants(&self, alpha: f64) -> Result<ConstantSet> {
        ConstantSet::new(self.k, self.d, alpha)
    }
}

/// w_k(x) = |x|^{2k}.
pub fn weight(x: f64, params: &DunklParams) -> f64 {
    if params.k == 0.0 {
        1.0
    } else {
        x.abs().powf(2.0 * params.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        let p1 = DunklParams::rank_one(1.0).unwrap();
        assert_eq!(weight(2.0, &p1), 4.0);
        let ph = DunklParams::rank_one(0.5).unwrap();
        assert_eq!(weight(-3.0, &ph), 3.0);
        let p0 = DunklParams::rank_one(0.0).unwrap();
        assert_eq!(weight(0.0, &p0), 1.0);
        assert_eq!(weight(-7.5, &p0), 1.0);
    }
}
