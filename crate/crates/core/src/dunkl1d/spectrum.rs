//! Sampled transforms on a fixed frequency grid, and multiplier application.
//!
//! A function is split as u = u_e + u_o. With ν the Bessel order (k − 1/2 in rank one),
//!
//! A(ξ) = N_ν ∫_0^∞ u_e(s) 𝒥_ν(ξs) s^{2ν+1} ds,
//! B(ξ) = N_ν ξ/(2ν+2) ∫_0^∞ u_o(s) 𝒥_{ν+1}(ξs) s^{2ν+2} ds,
//!
//! with N_ν = 2^{−ν}/Γ(ν+1), so that F u = A − iB and
//! F⁻¹(m F u)(x) = N_ν ∫_0^∞ m(ξ)[A 𝒥_ν(xξ) + B xξ/(2ν+2) 𝒥_{ν+1}(xξ)] ξ^{2ν+1} dξ
//! for every even multiplier m.

use std::sync::Arc;

use num_complex::Complex64;

use super::function::{Decay, Parity, TestFunction};
use super::params::DunklParams;
use crate::budget::Budget;
use crate::error::{domain, Error, Result};
use crate::exec;
use crate::quadrature::{
    gauss_jacobi_cached,
    integrate, integrate_bessel_oscillatory, integrate_graded, integrate_semi_infinite, kronrod21,
    Integral, TailBudget, Tolerance,
};
use crate::specfun::{gamma, normalized_j};

/// N_ν = 2^{−ν}/Γ(ν+1).
pub fn hankel_norm(nu: f64) -> f64 {
    2f64.powf(-nu) / gamma(nu + 1.0)
}

/// Frequency cutoff for a decay class: beyond it the transform is below 1e-20 relative
/// even after multiplication by ξ^{2ν+6}.
pub fn frequency_cutoff(decay: Decay, nu: f64, budget: &Budget) -> f64 {
    match decay {
        Decay::Gaussian { rate } => {
            let mut xi = (4.0 * rate * 46.0).sqrt();
            for _ in 0..6 {
                let lead = 46.0 + (2.0 * nu + 6.0).max(0.0) * xi.max(1.0).ln();
                xi = (4.0 * rate * lead).sqrt();
            }
            xi.min(budget.max_frequency)
        }
        _ => budget.max_frequency,
    }
}

/// Composite 21-point Kronrod grid on [0, Ξ]: geometric panels toward 0, uniform beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    nodes: Vec<f64>,
    kronrod: Vec<f64>,
    gauss: Vec<f64>,
    cutoff: f64,
    panel: f64,
    x_max: f64,
}

impl SpectralGrid {
    pub fn new(cutoff: f64, x_max: f64, budget: &Budget) -> Result<Self> {
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return domain(format!("frequency cutoff {cutoff} must be positive"));
        }
        let x_max = x_max.max(1.0);
        let h = budget.spectral_panel.min(4.0 / x_max).min(cutoff / 12.0);
        let mut edges = vec![0.0];
        for j in (0..budget.spectral_levels).rev() {
            edges.push(h * 0.5f64.powi(j as i32 + 1));
        }
        let uniform = ((cutoff - h) / h).ceil().max(0.0) as usize;
        edges.push(h);
        let step = if uniform > 0 { (cutoff - h) / uniform as f64 } else { h };
        for j in 1..=uniform {
            edges.push(h + step * j as f64);
        }
        let rule = kronrod21();
        let mut nodes = Vec::with_capacity(21 * edges.len());
        let mut kronrod = Vec::with_capacity(21 * edges.len());
        let mut gauss = Vec::with_capacity(21 * edges.len());
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (c, half) = (0.5 * (a + b), 0.5 * (b - a));
            for &(t, wk, wg) in rule.iter() {
                nodes.push(c + half * t);
                kronrod.push(wk * half);
                gauss.push(wg * half);
            }
        }
        Ok(Self { nodes, kronrod, gauss, cutoff, panel: h, x_max })
    }

    /// Grid adapted to one function.
    pub fn for_function(u: &TestFunction, params: &DunklParams, x_max: f64, budget: &Budget) -> Result<Self> {
        let cutoff = frequency_cutoff(u.decay(), params.bessel_order(), budget);
        Self::new(cutoff, x_max, budget)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn panel_width(&self) -> f64 {
        self.panel
    }
}

/// Transform samples of one function on a [`SpectralGrid`].
#[derive(Debug, Clone)]
pub struct Spectrum {
    grid: Arc<SpectralGrid>,
    nu: f64,
    norm: f64,
    even: Vec<f64>,
    odd: Option<Vec<f64>>,
    sample_err: Vec<f64>,
    atom: Option<f64>,
    evals: usize,
}

impl Spectrum {
    /// Samples F u, using the known transform when the function carries one.
    pub fn compute(u: &TestFunction, params: &DunklParams, x_max: f64, budget: &Budget) -> Result<Self> {
        if u.decay() == Decay::Constant {
            return Ok(Self::constant(u.eval(0.0), params.bessel_order()));
        }
        let grid = Arc::new(SpectralGrid::for_function(u, params, x_max, budget)?);
        Self::on_grid(u, params, grid, budget)
    }

    /// A constant function: a point mass at ξ = 0.
    pub fn constant(value: f64, nu: f64) -> Self {
        Self {
            grid: Arc::new(SpectralGrid {
                nodes: vec![],
                kronrod: vec![],
                gauss: vec![],
                cutoff: 0.0,
                panel: 0.0,
                x_max: f64::INFINITY,
            }),
            nu,
            norm: hankel_norm(nu),
            even: vec![],
            odd: None,
            sample_err: vec![],
            atom: Some(value),
            evals: 0,
        }
    }

    pub fn on_grid(
        u: &TestFunction,
        params: &DunklParams,
        grid: Arc<SpectralGrid>,
        budget: &Budget,
    ) -> Result<Self> {
        let nu = params.bessel_order();
        if u.decay() == Decay::Constant {
            return Ok(Self::constant(u.eval(0.0), nu));
        }
        let has_odd = u.parity() != Parity::Even;
        let has_even = u.parity() != Parity::Odd;
        let samples: Vec<Result<(f64, f64, f64, usize)>> = if u.has_known_transform() {
            exec::map(budget.execution, grid.nodes(), |&xi| {
                let f = u.known_transform(params, xi).expect("checked above");
                Ok((f.re, -f.im, 0.0, 1))
            })
        } else {
            let fixed = match u.decay() {
                Decay::Gaussian { .. } => Some(FixedHankel::new(
                    |s| u.even_part(s),
                    |s| u.odd_part(s),
                    (has_even, has_odd),
                    nu,
                    u.decay().support_radius().expect("gaussian radius"),
                    grid.cutoff(),
                )?),
                _ => None,
            };
            exec::map(budget.execution, grid.nodes(), |&xi| {
                if let Some((a, b, e)) = fixed.as_ref().and_then(|f| f.sample(xi)) {
                    return Ok((a, b, e, 0));
                }
                let a = if has_even {
                    hankel_even(&|s| u.even_part(s), nu, xi, u.decay(), budget.tol)?
                } else {
                    Integral::zero()
                };
                let b = if has_odd {
                    hankel_odd(&|s| u.odd_part(s), nu, xi, u.decay(), budget.tol)?
                } else {
                    Integral::zero()
                };
                Ok((a.value, b.value, a.abs_err + b.abs_err, a.evals + b.evals))
            })
        };
        let mut even = Vec::with_capacity(grid.len());
        let mut odd = Vec::with_capacity(grid.len());
        let mut sample_err = Vec::with_capacity(grid.len());
        let mut evals = 0;
        for s in samples {
            let (a, b, e, n) = s?;
            even.push(a);
            odd.push(b);
            sample_err.push(e);
            evals += n;
        }
        Ok(Self {
            grid,
            nu,
            norm: hankel_norm(nu),
            even,
            odd: has_odd.then_some(odd),
            sample_err,
            atom: None,
            evals,
        })
    }

    /// Builds a spectrum from precomputed samples (A, optional B) on `grid`.
    pub fn from_samples(
        grid: Arc<SpectralGrid>,
        nu: f64,
        even: Vec<f64>,
        odd: Option<Vec<f64>>,
        sample_err: Vec<f64>,
        evals: usize,
    ) -> Result<Self> {
        let n = grid.len();
        if even.len() != n || sample_err.len() != n || odd.as_ref().is_some_and(|o| o.len() != n) {
            return domain("sample vectors must match the grid");
        }
        Ok(Self { grid, nu, norm: hankel_norm(nu), even, odd, sample_err, atom: None, evals })
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn order(&self) -> f64 {
        self.nu
    }

    /// Integrand evaluations spent on the forward samples.
    pub fn evals(&self) -> usize {
        self.evals
    }

    pub fn is_constant(&self) -> Option<f64> {
        self.atom
    }

    /// (ξ_i, F u(ξ_i)) pairs.
    pub fn samples(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid.nodes.iter().enumerate().map(move |(i, &xi)| {
            let b = self.odd.as_ref().map_or(0.0, |o| o[i]);
            (xi, Complex64::new(self.even[i], -b))
        })
    }

    /// Transform-side product κ · F f · F g (both on the same grid).
    pub fn product(&self, other: &Spectrum, kappa: f64) -> Result<Spectrum> {
        match (self.atom, other.atom) {
            (Some(a), Some(b)) => return Ok(Spectrum::constant(a * b * kappa, self.nu)),
            (Some(_), None) | (None, Some(_)) => {
                return domain("product with a constant needs the other factor's value at 0")
            }
            _ => {}
        }
        if !Arc::ptr_eq(&self.grid, &other.grid) && self.grid != other.grid {
            return domain("spectra live on different grids");
        }
        let n = self.grid.len();
        let zero = vec![0.0; n];
        let b1 = self.odd.as_deref().unwrap_or(&zero);
        let b2 = other.odd.as_deref().unwrap_or(&zero);
        let mut even = Vec::with_capacity(n);
        let mut odd = Vec::with_capacity(n);
        let mut err = Vec::with_capacity(n);
        for i in 0..n {
            let (a1, a2) = (self.even[i], other.even[i]);
            // (a1 − i b1)(a2 − i b2) = (a1 a2 − b1 b2) − i(a1 b2 + b1 a2)
            even.push(kappa * (a1 * a2 - b1[i] * b2[i]));
            odd.push(kappa * (a1 * b2[i] + b1[i] * a2));
            let m1 = a1.abs() + b1[i].abs();
            let m2 = a2.abs() + b2[i].abs();
            err.push(kappa.abs() * (m1 * other.sample_err[i] + m2 * self.sample_err[i]));
        }
        let has_odd = self.odd.is_some() || other.odd.is_some();
        Ok(Spectrum {
            grid: Arc::clone(&self.grid),
            nu: self.nu,
            norm: self.norm,
            even,
            odd: has_odd.then_some(odd),
            sample_err: err,
            atom: None,
            evals: self.evals + other.evals,
        })
    }

    /// Precomputes the inverse-transform kernel at x so that many multipliers can be
    /// applied cheaply.
    pub fn at(&self, x: f64) -> SpectralPoint<'_> {
        if let Some(c) = self.atom {
            return SpectralPoint { spectrum: self, weights: vec![], abs_weights: vec![], atom: Some(c) };
        }
        let n = self.grid.len();
        let mut weights = Vec::with_capacity(n);
        let mut abs_weights = Vec::with_capacity(n);
        for i in 0..n {
            let xi = self.grid.nodes[i];
            let z = x * xi;
            let mut kern = self.even[i] * normalized_j(self.nu, z);
            if let Some(odd) = &self.odd {
                kern += odd[i] * z / (2.0 * self.nu + 2.0) * normalized_j(self.nu + 1.0, z);
            }
            let dens = self.norm * xi.powf(2.0 * self.nu + 1.0);
            weights.push(kern * dens);
            abs_weights.push(self.sample_err[i] * dens);
        }
        SpectralPoint { spectrum: self, weights, abs_weights, atom: None }
    }

    /// F⁻¹(m F u)(x) with an error estimate.
    pub fn apply(&self, m: impl Fn(f64) -> f64, x: f64) -> (f64, f64) {
        self.at(x).apply(m)
    }
}

/// The inverse-transform integrand at a fixed x, ready for multipliers.
#[derive(Debug, Clone)]
pub struct SpectralPoint<'a> {
    spectrum: &'a Spectrum,
    weights: Vec<f64>,
    abs_weights: Vec<f64>,
    atom: Option<f64>,
}

impl SpectralPoint<'_> {
    /// (value, error estimate) of N_ν ∫ m(ξ) [kernel] ξ^{2ν+1} dξ.
    pub fn apply(&self, m: impl Fn(f64) -> f64) -> (f64, f64) {
        if let Some(c) = self.atom {
            return (m(0.0) * c, 0.0);
        }
        let grid = &self.spectrum.grid;
        let mut total = 0.0;
        let mut err = 0.0;
        let mut last_panel = 0.0;
        for p in 0..grid.len() / 21 {
            let (mut resk, mut resg, mut absk) = (0.0, 0.0, 0.0);
            let mut vals = [0.0; 21];
            for j in 0..21 {
                let i = 21 * p + j;
                let mv = m(grid.nodes[i]);
                let v = mv * self.weights[i];
                vals[j] = mv;
                resk += grid.kronrod[i] * v;
                resg += grid.gauss[i] * v;
                absk += grid.kronrod[i] * (mv.abs() * self.abs_weights[i]);
            }
            let width: f64 = (0..21).map(|j| grid.kronrod[21 * p + j]).sum();
            let mean = resk / width;
            let resasc: f64 = (0..21)
                .map(|j| {
                    let i = 21 * p + j;
                    grid.kronrod[i] * (vals[j] * self.weights[i] - mean).abs()
                })
                .sum();
            let mut e = (resk - resg).abs();
            if resasc != 0.0 && e != 0.0 {
                e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
            }
            total += resk;
            err += e + absk + 1e-16 * resk.abs();
            last_panel = resk.abs();
        }
        (total, err + last_panel)
    }
}

/// Fixed Gauss–Jacobi rules on [0, R] absorbing the power weights, shared by every
/// frequency. Two rule sizes give an error estimate; a sample whose estimate exceeds
/// 1e-12 of the profile's absolute integral is rejected.
pub(crate) struct FixedHankel {
    nu: f64,
    even: Option<[RuleSamples; 2]>,
    odd: Option<[RuleSamples; 2]>,
    even_l1: f64,
    odd_l1: f64,
}

struct RuleSamples {
    nodes: Vec<f64>,
    weighted: Vec<f64>,
}

impl FixedHankel {
    pub(crate) fn new(
        fe: impl Fn(f64) -> f64,
        fo: impl Fn(f64) -> f64,
        (has_even, has_odd): (bool, bool),
        nu: f64,
        radius: f64,
        max_xi: f64,
    ) -> Result<Self> {
        let base = (0.5 * max_xi * radius).ceil() as usize;
        let sizes = [base + 40, base + 64];
        let build = |f: &dyn Fn(f64) -> f64, power: f64| -> Result<[RuleSamples; 2]> {
            let make = |n: usize| -> Result<RuleSamples> {
                let rule = gauss_jacobi_cached(n, 0.0, power)?;
                let scale = (0.5 * radius).powf(power + 1.0);
                let nodes: Vec<f64> = rule.nodes().iter().map(|t| 0.5 * radius * (1.0 + t)).collect();
                let weighted = nodes.iter().zip(rule.weights()).map(|(&s, w)| scale * w * f(s)).collect();
                Ok(RuleSamples { nodes, weighted })
            };
            Ok([make(sizes[0])?, make(sizes[1])?])
        };
        let even = if has_even { Some(build(&fe, 2.0 * nu + 1.0)?) } else { None };
        let odd = if has_odd { Some(build(&fo, 2.0 * nu + 2.0)?) } else { None };
        let l1 = |r: &Option<[RuleSamples; 2]>| {
            r.as_ref().map_or(0.0, |r| r[1].weighted.iter().map(|w| w.abs()).sum::<f64>())
        };
        let (even_l1, odd_l1) = (l1(&even), l1(&odd));
        Ok(Self { nu, even, odd, even_l1, odd_l1 })
    }

    /// (A, B, error) at ξ, or None when the fixed rules do not resolve it.
    pub(crate) fn sample(&self, xi: f64) -> Option<(f64, f64, f64)> {
        let norm = hankel_norm(self.nu);
        let apply = |r: &RuleSamples, order: f64| -> f64 {
            r.nodes.iter().zip(&r.weighted).map(|(&s, &w)| w * normalized_j(order, xi * s)).sum()
        };
        let (mut a, mut b, mut err) = (0.0, 0.0, 0.0);
        if let Some(r) = &self.even {
            let (lo, hi) = (apply(&r[0], self.nu), apply(&r[1], self.nu));
            let e = (hi - lo).abs() + 1e-16 * self.even_l1;
            if e > 1e-12 * self.even_l1 {
                return None;
            }
            a = norm * hi;
            err += norm * e;
        }
        if let Some(r) = &self.odd {
            let (lo, hi) = (apply(&r[0], self.nu + 1.0), apply(&r[1], self.nu + 1.0));
            let e = (hi - lo).abs() + 1e-16 * self.odd_l1;
            if e > 1e-12 * self.odd_l1 {
                return None;
            }
            let f = norm * xi / (2.0 * self.nu + 2.0);
            b = f * hi;
            err += f.abs() * e;
        }
        Some((a, b, err))
    }
}

/// A(ξ) for an even profile: N_ν ∫_0^∞ f(s) 𝒥_ν(ξs) s^{2ν+1} ds.
pub fn hankel_even(
    f: &(dyn Fn(f64) -> f64 + Sync),
    nu: f64,
    xi: f64,
    decay: Decay,
    tol: Tolerance,
) -> Result<Integral> {
    let p = 2.0 * nu + 1.0;
    let integrand = |s: f64| f(s) * normalized_j(nu, xi * s) * pow_or_one(s, p);
    let r = half_line(&integrand, p, nu, xi, decay, tol)?;
    Ok(r.scale(hankel_norm(nu)))
}

/// B(ξ) for an odd profile: N_ν ξ/(2ν+2) ∫_0^∞ f(s) 𝒥_{ν+1}(ξs) s^{2ν+2} ds.
pub fn hankel_odd(
    f: &(dyn Fn(f64) -> f64 + Sync),
    nu: f64,
    xi: f64,
    decay: Decay,
    tol: Tolerance,
) -> Result<Integral> {
    if xi == 0.0 {
        return Ok(Integral::zero());
    }
    let p = 2.0 * nu + 2.0;
    let integrand = |s: f64| f(s) * normalized_j(nu + 1.0, xi * s) * s.powf(p);
    let r = half_line(&integrand, p, nu + 1.0, xi, decay, tol)?;
    Ok(r.scale(hankel_norm(nu) * xi / (2.0 * nu + 2.0)))
}

fn pow_or_one(s: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        s.powf(p)
    }
}

fn half_line(
    g: &dyn Fn(f64) -> f64,
    near_exponent: f64,
    nu: f64,
    xi: f64,
    decay: Decay,
    tol: Tolerance,
) -> Result<Integral> {
    match decay {
        Decay::Gaussian { .. } | Decay::Compact { .. } => {
            let r = decay.support_radius().expect("finite support radius");
            // Split so each panel carries a bounded number of oscillations.
            let pieces = ((xi * r) / 20.0).ceil().max(1.0) as usize;
            let first = r / pieces as f64;
            let mut total = integrate_graded(g, 0.0, first, near_exponent.min(1.0), tol)?;
            for j in 1..pieces {
                let a = first * j as f64;
                total = total.add(integrate(g, a, a + first, tol)?);
            }
            Ok(total)
        }
        Decay::Algebraic { exponent } => {
            if xi == 0.0 {
                let p = exponent - near_exponent;
                if !(p > 1.0) {
                    return Err(Error::Domain(format!(
                        "transform at 0 diverges for decay exponent {exponent}"
                    )));
                }
                let tail = TailBudget::default()
                    .with_near_exponent(near_exponent.min(1.0))
                    .with_min_extent(8.0)
                    .with_algebraic_decay(p)
                    .with_tol(tol);
                return Ok(integrate_semi_infinite(g, &tail)?.integral);
            }
            let head_end = (20.0 / xi).clamp(1.0, 40.0);
            let head = integrate_graded(g, 0.0, head_end, near_exponent.min(1.0), tol)?;
            let tail = integrate_bessel_oscillatory(g, nu, xi, head_end, tol, 4000)?;
            Ok(head.add(tail))
        }
        Decay::Constant => domain("a constant has no integrable transform"),
    }
}
