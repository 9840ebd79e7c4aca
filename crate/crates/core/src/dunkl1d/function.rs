use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::DunklParams;
use crate::error::{domain, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// F_k u(ξ) for the given parameters.
pub type TransformFn = Arc<dyn Fn(&DunklParams, f64) -> Complex64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// How the function behaves at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Decay {
    /// Bounded by a polynomial times e^{−rate·x²}.
    Gaussian { rate: f64 },
    /// Like |x|^{−exponent}.
    Algebraic { exponent: f64 },
    /// Identically zero for |x| > radius.
    Compact { radius: f64 },
    /// The function is constant; its transform is an atom at ξ = 0.
    Constant,
}

impl Decay {
    /// Radius beyond which the function is negligible (below 1e-20 relative).
    pub fn support_radius(&self) -> Option<f64> {
        match *self {
            Decay::Gaussian { rate } => {
                let mut r = (46.0 / rate).sqrt();
                for _ in 0..4 {
                    r = ((46.0 + 6.0 * (1.0 + r).ln()) / rate).sqrt();
                }
                Some(r)
            }
            Decay::Compact { radius } => Some(radius),
            Decay::Algebraic { .. } | Decay::Constant => None,
        }
    }

    /// Typical length scale of the function.
    pub fn scale(&self) -> f64 {
        match *self {
            Decay::Gaussian { rate } => (0.5 / rate).sqrt(),
            Decay::Compact { radius } => radius / 4.0,
            Decay::Algebraic { .. } | Decay::Constant => 1.0,
        }
    }
}

/// A real function on ℝ with the metadata the routes need.
#[derive(Clone)]
pub struct TestFunction {
    label: String,
    eval: RealFn,
    derivative: Option<RealFn>,
    second_derivative: Option<RealFn>,
    parity: Parity,
    decay: Decay,
    known_transform: Option<TransformFn>,
    taylor: Option<Vec<f64>>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("parity", &self.parity)
            .field("decay", &self.decay)
            .field("known_transform", &self.known_transform.is_some())
            .finish()
    }
}

impl TestFunction {
    pub fn new(
        label: impl Into<String>,
        decay: Decay,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            eval: Arc::new(f),
            derivative: None,
            second_derivative: None,
            parity: Parity::None,
            decay,
            known_transform: None,
            taylor: None,
        }
    }

    /// Declares a parity; rejected if spot checks contradict it.
    pub fn with_parity(mut self, parity: Parity) -> Result<Self> {
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::None => {
                self.parity = parity;
                return Ok(self);
            }
        };
        let scale = self.decay.scale();
        for &t in &[0.13, 0.61, 1.37, 2.9] {
            let x = t * scale;
            let (a, b) = (self.eval(x), self.eval(-x));
            if (a - sign * b).abs() > 1e-12 * (a.abs() + b.abs()) + 1e-300 {
                return domain(format!(
                    "{} is not {:?}: f({x}) = {a}, f(-{x}) = {b}",
                    self.label, parity
                ));
            }
        }
        self.parity = parity;
        Ok(self)
    }

    pub fn with_derivative(mut self, df: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(df));
        self
    }

    pub fn with_second_derivative(
        mut self,
        d2f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.second_derivative = Some(Arc::new(d2f));
        self
    }

    pub fn with_transform(
        mut self,
        tf: impl Fn(&DunklParams, f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.known_transform = Some(Arc::new(tf));
        self
    }

    /// Taylor coefficients a_j of the even part, u_e(x) = Σ a_j x^{2j}.
    pub fn with_taylor(mut self, coeffs: Vec<f64>) -> Self {
        self.taylor = Some(coeffs);
        self
    }

    pub fn without_transform(mut self) -> Self {
        self.known_transform = None;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn taylor(&self) -> Option<&[f64]> {
        self.taylor.as_deref()
    }

    pub fn has_known_transform(&self) -> bool {
        self.known_transform.is_some()
    }

    pub fn known_transform(&self, params: &DunklParams, xi: f64) -> Option<Complex64> {
        self.known_transform.as_ref().map(|tf| tf(params, xi))
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// f′(x): analytic when supplied, otherwise a central difference with step
    /// cbrt(ε)(1 + |x|).
    pub fn derivative(&self, x: f64) -> f64 {
        if let Some(df) = &self.derivative {
            return df(x);
        }
        let h = f64::EPSILON.cbrt() * (1.0 + x.abs());
        (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
    }

    /// f″(x): analytic when supplied, otherwise a central second difference.
    pub fn second_derivative(&self, x: f64) -> f64 {
        if let Some(d2f) = &self.second_derivative {
            return d2f(x);
        }
        if let Some(df) = &self.derivative {
            let h = f64::EPSILON.cbrt() * (1.0 + x.abs());
            return (df(x + h) - df(x - h)) / (2.0 * h);
        }
        let h = f64::EPSILON.powf(0.25) * (1.0 + x.abs());
        (self.eval(x + h) - 2.0 * self.eval(x) + self.eval(x - h)) / (h * h)
    }

    pub fn even_part(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => self.eval(x),
            Parity::Odd => 0.0,
            Parity::None => 0.5 * (self.eval(x) + self.eval(-x)),
        }
    }

    pub fn odd_part(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => 0.0,
            Parity::Odd => self.eval(x),
            Parity::None => 0.5 * (self.eval(x) - self.eval(-x)),
        }
    }

    /// u_o(r)/r, continuous at r = 0 where it equals u′(0).
    pub fn odd_quotient(&self, r: f64) -> f64 {
        if self.parity == Parity::Even {
            return 0.0;
        }
        let r_small = 1e-6 * self.decay.scale();
        if r.abs() < r_small {
            match &self.derivative {
                Some(df) => df(0.0),
                None => self.odd_part(r_small) / r_small,
            }
        } else {
            self.odd_part(r) / r
        }
    }

    /// x ↦ u(s·x), with all metadata carried over.
    pub fn dilate(&self, s: f64) -> TestFunction {
        let f = Arc::clone(&self.eval);
        let mut out = TestFunction::new(format!("{}(x*{s})", self.label), self.decay.dilate(s), move |x| {
            f(s * x)
        });
        out.parity = self.parity;
        if let Some(df) = &self.derivative {
            let df = Arc::clone(df);
            out.derivative = Some(Arc::new(move |x| s * df(s * x)));
        }
        if let Some(d2f) = &self.second_derivative {
            let d2f = Arc::clone(d2f);
            out.second_derivative = Some(Arc::new(move |x| s * s * d2f(s * x)));
        }
        if let Some(tf) = &self.known_transform {
            let tf = Arc::clone(tf);
            out.known_transform = Some(Arc::new(move |p: &DunklParams, xi| {
                tf(p, xi / s) * s.abs().powf(-2.0 * p.half_dim())
            }));
        }
        out.taylor = self
            .taylor
            .as_ref()
            .map(|c| c.iter().enumerate().map(|(j, a)| a * s.powi(2 * j as i32)).collect());
        out
    }
}

impl Decay {
    fn dilate(&self, s: f64) -> Decay {
        match *self {
            Decay::Gaussian { rate } => Decay::Gaussian { rate: rate * s * s },
            Decay::Compact { radius } => Decay::Compact { radius: radius / s.abs() },
            other => other,
        }
    }
}

fn gaussian_taylor(rate: f64, terms: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(terms);
    let mut a = 1.0;
    for j in 0..terms {
        c.push(a);
        a *= -rate / (j as f64 + 1.0);
    }
    c
}

/// e^{−rate·x²}; its transform is (2·rate)^{−(γ+d/2)} e^{−ξ²/(4·rate)}.
pub fn gaussian_with_rate(rate: f64) -> TestFunction {
    TestFunction::new(format!("gaussian(rate={rate})"), Decay::Gaussian { rate }, move |x| {
        (-rate * x * x).exp()
    })
    .with_derivative(move |x| -2.0 * rate * x * (-rate * x * x).exp())
    .with_second_derivative(move |x| (4.0 * rate * rate * x * x - 2.0 * rate) * (-rate * x * x).exp())
    .with_transform(move |p, xi| {
        Complex64::new((2.0 * rate).powf(-p.half_dim()) * (-xi * xi / (4.0 * rate)).exp(), 0.0)
    })
    .with_taylor(gaussian_taylor(rate, 40))
    .with_parity(Parity::Even)
    .expect("gaussian is even")
}

/// e^{−x²/2}, the fixed point of the transform.
pub fn gaussian() -> TestFunction {
    let mut g = gaussian_with_rate(0.5);
    g.label = "gaussian".into();
    g
}

/// Wide Gaussian e^{−x²/(2L²)} standing in for a constant.
pub fn mollified_constant(width: f64) -> TestFunction {
    let mut g = gaussian_with_rate(0.5 / (width * width));
    g.label = format!("mollified-constant(L={width})");
    g
}

/// The constant function; every route returns exactly 0 on it.
pub fn constant(c: f64) -> TestFunction {
    TestFunction::new(format!("constant({c})"), Decay::Constant, move |_| c)
        .with_derivative(|_| 0.0)
        .with_second_derivative(|_| 0.0)
        .with_taylor(vec![c])
        .with_parity(Parity::Even)
        .expect("constants are even")
}

/// x·e^{−rate·x²}; transform −iξ(2·rate)^{−(γ+d/2)−1} e^{−ξ²/(4·rate)}.
pub fn odd_gaussian_with_rate(rate: f64) -> TestFunction {
    TestFunction::new(format!("odd-gaussian(rate={rate})"), Decay::Gaussian { rate }, move |x| {
        x * (-rate * x * x).exp()
    })
    .with_derivative(move |x| (1.0 - 2.0 * rate * x * x) * (-rate * x * x).exp())
    .with_second_derivative(move |x| {
        (4.0 * rate * rate * x * x * x - 6.0 * rate * x) * (-rate * x * x).exp()
    })
    .with_transform(move |p, xi| {
        Complex64::new(
            0.0,
            -xi * (2.0 * rate).powf(-p.half_dim() - 1.0) * (-xi * xi / (4.0 * rate)).exp(),
        )
    })
    .with_taylor(vec![0.0])
    .with_parity(Parity::Odd)
    .expect("odd gaussian is odd")
}

/// x²·e^{−x²/2}; transform (2γ+d − ξ²) e^{−ξ²/2}.
pub fn quadratic_gaussian() -> TestFunction {
    let mut taylor = vec![0.0];
    taylor.extend(gaussian_taylor(0.5, 39));
    TestFunction::new("quadratic-gaussian", Decay::Gaussian { rate: 0.5 }, |x| {
        x * x * (-0.5 * x * x).exp()
    })
    .with_derivative(|x| (2.0 * x - x * x * x) * (-0.5 * x * x).exp())
    .with_second_derivative(|x| (2.0 - 5.0 * x * x + x.powi(4)) * (-0.5 * x * x).exp())
    .with_transform(|p, xi| Complex64::new((2.0 * p.half_dim() - xi * xi) * (-0.5 * xi * xi).exp(), 0.0))
    .with_taylor(taylor)
    .with_parity(Parity::Even)
    .expect("quadratic gaussian is even")
}

/// (1 + x + x²)e^{−x²/2}, which has no parity.
pub fn poly_gaussian() -> TestFunction {
    let g = gaussian_taylor(0.5, 40);
    let taylor: Vec<f64> =
        (0..40).map(|j| g[j] + if j > 0 { g[j - 1] } else { 0.0 }).collect();
    TestFunction::new("poly-gaussian", Decay::Gaussian { rate: 0.5 }, |x| {
        (1.0 + x + x * x) * (-0.5 * x * x).exp()
    })
    .with_derivative(|x| (1.0 + x - x * x - x * x * x) * (-0.5 * x * x).exp())
    .with_second_derivative(|x| {
        (1.0 - 3.0 * x - 4.0 * x * x + x * x * x + x.powi(4)) * (-0.5 * x * x).exp()
    })
    .with_transform(|p, xi| {
        let g = (-0.5 * xi * xi).exp();
        Complex64::new((1.0 + 2.0 * p.half_dim() - xi * xi) * g, -xi * g)
    })
    .with_taylor(taylor)
}

/// (1 + x²)e^{−x²}; transform 2^{−(γ+d/2)} e^{−ξ²/4}(1 + γ + d/2 − ξ²/4).
pub fn bump_gaussian() -> TestFunction {
    let g = gaussian_taylor(1.0, 40);
    let taylor: Vec<f64> =
        (0..40).map(|j| g[j] + if j > 0 { g[j - 1] } else { 0.0 }).collect();
    TestFunction::new("bump-gaussian", Decay::Gaussian { rate: 1.0 }, |x| {
        (1.0 + x * x) * (-x * x).exp()
    })
    .with_derivative(|x| -2.0 * x.powi(3) * (-x * x).exp())
    .with_second_derivative(|x| (4.0 * x.powi(4) - 6.0 * x * x) * (-x * x).exp())
    .with_transform(|p, xi| {
        let h = p.half_dim();
        Complex64::new(2f64.powf(-h) * (-0.25 * xi * xi).exp() * (1.0 + h - 0.25 * xi * xi), 0.0)
    })
    .with_taylor(taylor)
    .with_parity(Parity::Even)
    .expect("bump is even")
}
