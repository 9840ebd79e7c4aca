use super::function::TestFunction;
use super::params::DunklParams;
use crate::error::{Error, Result};

/// Below this |x| the operators use their continuous extension at 0.
const ORIGIN_BAND: f64 = 1e-7;

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { abscissa: x })
    }
}

/// T_k f(x) = f′(x) + k (f(x) − f(−x))/x, extended by (1+2k) f′(0) at 0.
pub fn dunkl_derivative(f: &TestFunction, x: f64, params: &DunklParams) -> Result<f64> {
    let k = params.k;
    let v = if x.abs() < ORIGIN_BAND {
        (1.0 + 2.0 * k) * f.derivative(0.0)
    } else {
        f.derivative(x) + k * (f.eval(x) - f.eval(-x)) / x
    };
    finite(v, x)
}

/// Δ_k f(x) = f″(x) + (2k/x) f′(x) − (k/x²)(f(x) − f(−x)), extended by (1+2k) f″(0) at 0.
pub fn dunkl_laplacian_1d(f: &TestFunction, x: f64, params: &DunklParams) -> Result<f64> {
    let k = params.k;
    let v = if x.abs() < ORIGIN_BAND {
        (1.0 + 2.0 * k) * f.second_derivative(0.0)
    } else {
        f.second_derivative(x) + 2.0 * k / x * f.derivative(x)
            - k / (x * x) * (f.eval(x) - f.eval(-x))
    };
    finite(v, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl1d::function::{Decay, TestFunction};

    fn poly(c: [f64; 3]) -> TestFunction {
        TestFunction::new("poly", Decay::Compact { radius: 10.0 }, move |x| c[0] + c[1] * x + c[2] * x * x)
            .with_derivative(move |x| c[1] + 2.0 * c[2] * x)
            .with_second_derivative(move |_| 2.0 * c[2])
    }

    #[test]
    fn monomials() {
        let p = DunklParams::rank_one(0.7).unwrap();
        let sq = poly([0.0, 0.0, 1.0]);
        let lin = poly([0.0, 1.0, 0.0]);
        for &x in &[-1.5, 0.0, 0.3, 2.0] {
            assert!((dunkl_derivative(&sq, x, &p).unwrap() - 2.0 * x).abs() < 1e-14);
            assert!((dunkl_derivative(&lin, x, &p).unwrap() - 2.4).abs() < 1e-14);
            assert!((dunkl_laplacian_1d(&sq, x, &p).unwrap() - (2.0 + 4.0 * 0.7)).abs() < 1e-13);
        }
    }
}
