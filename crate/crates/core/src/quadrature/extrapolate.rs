//! Richardson extrapolation with known error exponents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub value: f64,
    /// Difference between the last two levels of the table.
    pub err: f64,
    /// Last entry of every level, from raw data to fully eliminated.
    pub diagonal: Vec<f64>,
}

/// Eliminates error terms c_m h^{p_m} from values sampled at h_j = h_0 ratio^j.
///
/// `values[j]` belongs to h_j; `ratio` in (0, 1). Each exponent in turn removes one
/// term, so at most `values.len() − 1` exponents are used.
pub fn richardson(values: &[f64], ratio: f64, exponents: &[f64]) -> Result<Extrapolation> {
    if values.is_empty() {
        return Err(Error::Convergence("no samples to extrapolate".into()));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Domain(format!("step ratio {ratio} must lie in (0,1)")));
    }
    let mut level: Vec<f64> = values.to_vec();
    let mut diagonal = vec![*level.last().unwrap()];
    for &p in exponents.iter().take(values.len() - 1) {
        let rp = ratio.powf(p);
        level = level.windows(2).map(|w| (w[1] - rp * w[0]) / (1.0 - rp)).collect();
        diagonal.push(*level.last().unwrap());
    }
    let n = diagonal.len();
    let err = if n >= 2 { (diagonal[n - 1] - diagonal[n - 2]).abs() } else { f64::INFINITY };
    Ok(Extrapolation { value: diagonal[n - 1], err, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_listed_powers_exactly() {
        let f = |h: f64| 3.0 + 2.0 * h.powf(0.5) - h.powi(2) + 0.25 * h.powf(2.5);
        let hs: Vec<f64> = (0..5).map(|j| 0.4 * 0.5f64.powi(j)).collect();
        let vals: Vec<f64> = hs.iter().map(|&h| f(h)).collect();
        let r = richardson(&vals, 0.5, &[0.5, 2.0, 2.5]).unwrap();
        assert!((r.value - 3.0).abs() < 1e-13);
    }
}
