use std::cell::{Cell, RefCell};

use serde::{Deserialize, Serialize};

use super::{PointwiseMode, RouteEvaluator, RouteId, RouteValue};
use crate::dunkl1d::{
    dunkl_kernel, dunkl_laplacian_1d, spherical_mean_1d, translate, translation_nodes, Decay, DunklParams,
    Estimate,
};
use crate::error::{domain, Error, Result};
use crate::extension::{default_y_sequence, neumann_limit, ExtensionSolution};
use crate::quadrature::{
    gauss_jacobi_cached, gauss_legendre, integrate, integrate_bessel_oscillatory, integrate_graded, richardson,
    Integral, Tolerance,
};
use crate::specfun::{abs_gamma_neg_half_open, normalized_j};

/// Where the kernel identity is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineDomain {
    HalfLine,
    FullLine,
}

/// ∫ [2 − E_k(iξy) − E_k(−iξy)] |y|^{−α−2k−1} w_k(y) dy over (0, ∞) or ℝ, by direct
/// quadrature. The half-line value is γ_{k,1}(α)|ξ|^α.
pub fn kernel_integral(
    xi: f64,
    alpha: f64,
    params: &DunklParams,
    domain_: LineDomain,
    tol: Tolerance,
) -> Result<Estimate> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    if params.d != 1 {
        return domain("the kernel identity is evaluated in rank one");
    }
    let xi = xi.abs();
    if xi == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let k = params.k;
    let p = -alpha - 2.0 * k - 1.0;
    let nu = k - 0.5;
    let integrand = |y: f64| {
        let z = xi * y;
        let d2 = if z < 0.5 {
            2.0 * one_minus_normalized_j(nu, z)
        } else {
            let e = dunkl_kernel(xi, y, params) + dunkl_kernel(-xi, y, params);
            2.0 - e.re
        };
        d2 * y.powf(p) * y.powf(2.0 * k)
    };
    let head_end = 20.0 / xi;
    let head = integrate_graded(integrand, 0.0, head_end, 1.0 - alpha, tol)?;
    // Beyond the head: 2∫ y^{−1−α} in closed form minus the oscillating kernel part.
    let osc = integrate_bessel_oscillatory(
        |y| 2.0 * normalized_j(nu, xi * y) * y.powf(-1.0 - alpha),
        nu,
        xi,
        head_end,
        tol,
        4000,
    )?;
    let half = head.value + 2.0 * head_end.powf(-alpha) / alpha - osc.value;
    let err = head.abs_err + osc.abs_err;
    Ok(match domain_ {
        LineDomain::HalfLine => Estimate { value: half, abs_err: err },
        LineDomain::FullLine => Estimate { value: 2.0 * half, abs_err: 2.0 * err },
    })
}

/// 1 − 𝒥_ν(z) from its power series, free of cancellation for small z.
fn one_minus_normalized_j(nu: f64, z: f64) -> f64 {
    let q = -0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 0.0;
    for m in 1..40 {
        term *= q / (m as f64 * (nu + m as f64));
        sum -= term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Captures the first error raised inside an integrand that must return plain f64.
struct Trap {
    first: RefCell<Option<Error>>,
    calls: Cell<usize>,
}

impl Trap {
    fn new() -> Self {
        Self { first: RefCell::new(None), calls: Cell::new(0) }
    }

    fn run(&self, f: impl FnOnce() -> Result<f64>) -> f64 {
        self.calls.set(self.calls.get() + 1);
        match f() {
            Ok(v) => v,
            Err(e) => {
                self.first.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    }

    fn finish(self) -> Result<usize> {
        match self.first.into_inner() {
            Some(e) => Err(e),
            None => Ok(self.calls.get()),
        }
    }
}

impl RouteEvaluator {
    fn value(&self, route: RouteId, value: f64, err_est: f64, evals: usize) -> Result<RouteValue> {
        if !value.is_finite() {
            return Err(Error::NonFinite { abscissa: f64::NAN });
        }
        Ok(RouteValue { route, value, err_est: err_est.abs(), evals })
    }

    fn is_constant(&self) -> bool {
        self.u.decay() == Decay::Constant
    }

    /// Outer radius beyond which τ^x u(±y) vanishes to working precision.
    fn outer_radius(&self, x: f64) -> Result<f64> {
        match self.u.decay().support_radius() {
            Some(r) => Ok(r + x.abs()),
            None => domain("this route needs a datum with bounded effective support"),
        }
    }

    /// 1/γ_{k,1}(α), the constant of the half-line second-difference integral.
    fn pointwise_constant(&self) -> f64 {
        1.0 / self.constants.gamma_kd_alpha
    }

    /// F⁻¹(|ξ|^α F u)(x).
    pub fn spectral(&self, x: f64) -> Result<RouteValue> {
        if self.is_constant() {
            return self.value(RouteId::Spectral, 0.0, 0.0, 0);
        }
        let spec = self.spectrum_for(x)?;
        let a = self.alpha;
        let (v, e) = spec.apply(|xi| xi.powf(a), x);
        self.value(RouteId::Spectral, v, e, spec.evals())
    }

    /// (1/γ) ∫_0^∞ [2u(x) − τ^x u(y) − τ^x u(−y)] y^{−1−α} dy.
    pub fn pointwise(&self, x: f64, mode: PointwiseMode) -> Result<RouteValue> {
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(Error::AlphaOutOfRange { alpha: self.alpha });
        }
        if self.is_constant() {
            return self.value(RouteId::Pointwise, 0.0, 0.0, 0);
        }
        let (est, evals) = match mode {
            PointwiseMode::Symmetric => {
                let (p, b, u) = (&self.params, &self.budget, &self.u);
                let ux = u.eval(x);
                let lap = dunkl_laplacian_1d(u, x, p)?;
                self.singular_integral(
                    x,
                    |y| Ok(2.0 * ux - translate(u, x, y, p, b)? - translate(u, x, -y, p, b)?),
                    -lap / (2.0 * p.k + 1.0),
                    2.0 * ux,
                )?
            }
            PointwiseMode::Unrolled => self.unrolled(x)?,
            PointwiseMode::PrincipalValue => self.principal_value(x)?,
        };
        let c = self.pointwise_constant();
        self.value(RouteId::Pointwise, c * est.value, c * est.abs_err, evals)
    }

    /// (σ/γ) ∫_0^∞ [u(x) − M_r u(x)] r^{−1−α} dr; σ = 2 in rank one.
    pub fn spherical(&self, x: f64) -> Result<RouteValue> {
        if self.is_constant() {
            return self.value(RouteId::SphericalMean, 0.0, 0.0, 0);
        }
        let (p, b, u) = (&self.params, &self.budget, &self.u);
        let ux = u.eval(x);
        let lap = dunkl_laplacian_1d(u, x, p)?;
        let (est, evals) = self.singular_integral(
            x,
            |r| Ok(ux - spherical_mean_1d(u, x, r, p, b)?),
            -lap / (2.0 * (2.0 * p.k + 1.0)),
            ux,
        )?;
        let c = self.constants.sigma_k_d / self.constants.gamma_kd_alpha;
        self.value(RouteId::SphericalMean, c * est.value, c * est.abs_err, evals)
    }

    /// ∫_0^∞ g(y) y^{−1−α} dy for g(y) ≈ `quad_coef`·y² near 0 and g → `far` beyond the
    /// outer radius: Taylor term below the cutoff, adaptive quadrature up to the outer
    /// radius, closed-form tail.
    fn singular_integral(
        &self,
        x: f64,
        g: impl Fn(f64) -> Result<f64>,
        quad_coef: f64,
        far: f64,
    ) -> Result<(Estimate, usize)> {
        let a = self.alpha;
        let cut = self.budget.taylor_cutoff;
        let outer = self.outer_radius(x)?;
        let near = quad_coef * cut.powf(2.0 - a) / (2.0 - a);
        let trap = Trap::new();
        let f = |y: f64| trap.run(|| g(y)) * y.powf(-1.0 - a);
        let mut total = Integral::zero();
        for w in self.breaks(x, outer).windows(2) {
            total = total.add(integrate(f, w[0], w[1], self.budget.tol)?);
        }
        let evals = trap.finish()?;
        let tail = far * outer.powf(-a) / a;
        Ok((Estimate { value: near + total.value + tail, abs_err: total.abs_err }, evals))
    }

    fn breaks(&self, x: f64, outer: f64) -> Vec<f64> {
        let cut = self.budget.taylor_cutoff;
        let scale = self.u.decay().scale();
        let mut breaks = vec![cut, scale.max(cut), outer];
        if x.abs() > cut && x.abs() < outer {
            breaks.push(x.abs());
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        breaks
    }

    /// Fixed tensor rule: graded Gauss–Legendre panels in y times the Jacobi rule of
    /// the translation measure in t. Two panel orders give the error estimate.
    fn unrolled(&self, x: f64) -> Result<(Estimate, usize)> {
        let (a, k, u) = (self.alpha, self.params.k, &self.u);
        let cut = self.budget.taylor_cutoff;
        let outer = self.outer_radius(x)?;
        let scale = self.u.decay().scale();
        let ux = u.eval(x);
        let lap = dunkl_laplacian_1d(u, x, &self.params)?;
        let near = -lap / (2.0 * k + 1.0) * cut.powf(2.0 - a) / (2.0 - a);
        let tail = 2.0 * ux * outer.powf(-a) / a;

        let mut panels = Vec::new();
        let mut lo = cut;
        while lo < scale.min(outer) {
            let hi = (2.0 * lo).min(scale.min(outer));
            panels.push((lo, hi));
            lo = hi;
        }
        let width = 0.25 * scale;
        while lo < outer {
            let hi = (lo + width).min(outer);
            panels.push((lo, hi));
            lo = hi;
        }

        let jacobi = if k == 0.0 {
            None
        } else {
            let n = translation_nodes(u, x, outer, &self.budget)?;
            Some(gauss_jacobi_cached(n, k, k - 1.0)?)
        };
        let second_difference = |y: f64| -> f64 {
            match &jacobi {
                None => 2.0 * ux - u.eval(x + y) - u.eval(x - y),
                Some(rule) => {
                    let mut acc = 0.0;
                    let mut mass = 0.0;
                    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
                        let mut s = 0.0;
                        for yy in [y, -y] {
                            let r = (x * x + yy * yy - 2.0 * x * yy * t).max(0.0).sqrt();
                            s += u.even_part(r) + (x + yy) * u.odd_quotient(r);
                        }
                        acc += w * s;
                        mass += w;
                    }
                    2.0 * ux - acc / mass
                }
            }
        };
        let inner_nodes = jacobi.as_ref().map_or(1, |r| r.len());
        let mut sums = [0.0; 2];
        let mut evals = 0;
        for (slot, n) in [20, 30].into_iter().enumerate() {
            let gl = gauss_legendre(n);
            for &(lo, hi) in &panels {
                let rule = gl.mapped(lo, hi);
                sums[slot] += rule.integrate(|y| second_difference(y) * y.powf(-1.0 - a));
                evals += n * inner_nodes;
            }
        }
        let value = near + sums[1] + tail;
        if !value.is_finite() {
            return Err(Error::NonFinite { abscissa: x });
        }
        Ok((Estimate { value, abs_err: (sums[1] - sums[0]).abs() }, evals))
    }

    /// I(ε) = ∫_ε^Y [u(x) − τ^x u(y)] y^{−1−α} dy + ∫_ε^Y [u(x) − τ^x u(−y)] y^{−1−α} dy + tail,
    /// integrated one side at a time; I(ε) − I(0) has the powers ε^{2−α}, ε^{4−α}, ….
    fn principal_value(&self, x: f64) -> Result<(Estimate, usize)> {
        let (a, p, b, u) = (self.alpha, &self.params, &self.budget, &self.u);
        let eps = &b.eps_sequence;
        if eps.len() < 2 {
            return domain("the principal-value mode needs at least two inner radii");
        }
        let ratio = eps[1] / eps[0];
        if eps.windows(2).any(|w| !(w[1] > 0.0 && w[1] < w[0]) || (w[1] / w[0] - ratio).abs() > 1e-12) {
            return domain("inner radii must be positive, decreasing and geometric");
        }
        let outer = self.outer_radius(x)?;
        if eps[0] >= outer {
            return domain("inner radii must lie below the outer radius");
        }
        let ux = u.eval(x);
        let trap = Trap::new();
        let one_sided = |lo: f64, hi: f64| -> Result<Integral> {
            let mut total = Integral::zero();
            for sign in [1.0, -1.0] {
                let f = |y: f64| trap.run(|| Ok(ux - translate(u, x, sign * y, p, b)?)) * y.powf(-1.0 - a);
                let mut breaks = vec![lo, hi];
                if x.abs() > lo && x.abs() < hi {
                    breaks.insert(1, x.abs());
                }
                for w in breaks.windows(2) {
                    total = total.add(integrate(f, w[0], w[1], b.tol)?);
                }
            }
            Ok(total)
        };
        let tail = 2.0 * ux * outer.powf(-a) / a;
        let mut running = one_sided(eps[0], outer)?;
        let mut values = vec![running.value + tail];
        for w in eps.windows(2) {
            running = running.add(one_sided(w[1], w[0])?);
            values.push(running.value + tail);
        }
        let evals = trap.finish()?;
        let exponents: Vec<f64> = (1..eps.len()).map(|j| 2.0 * j as f64 - a).collect();
        let ex = richardson(&values, ratio, &exponents)?;
        Ok((Estimate { value: ex.value, abs_err: ex.err + running.abs_err }, evals))
    }

    /// (1/|Γ(−α/2)|) ∫_0^∞ [u(x) − e^{tΔ_k}u(x)] t^{−1−α/2} dt, split at t = 1 and
    /// mapped to s = 1/t beyond it.
    pub fn bochner(&self, x: f64) -> Result<RouteValue> {
        if self.is_constant() {
            return self.value(RouteId::Bochner, 0.0, 0.0, 0);
        }
        let a = self.alpha;
        let s = 0.5 * a;
        let spec = self.spectrum_for(x)?;
        let point = spec.at(x);
        let (ux, ux_err) = point.apply(|_| 1.0);
        let noise_near = Cell::new(0.0f64);
        let noise_far = Cell::new(0.0f64);
        let near = integrate_graded(
            |t| {
                let (v, e) = point.apply(|xi| (-t * xi * xi).exp_m1());
                noise_near.set(noise_near.get().max(e / t));
                -v * t.powf(-1.0 - s)
            },
            0.0,
            1.0,
            -s,
            self.budget.tol,
        )?;
        let h = self.params.half_dim();
        let far = integrate_graded(
            |r| {
                let (v, e) = point.apply(|xi| (-xi * xi / r).exp());
                noise_far.set(noise_far.get().max(e));
                v * r.powf(s - 1.0)
            },
            0.0,
            1.0,
            s - 1.0 + h,
            self.budget.tol,
        )?;
        let c = 1.0 / abs_gamma_neg_half_open(s);
        let value = c * (near.value + ux / s - far.value);
        let err = c
            * (near.abs_err
                + far.abs_err
                + ux_err / s
                + noise_near.get() / (1.0 - s)
                + noise_far.get() / s);
        self.value(RouteId::Bochner, value, err, spec.evals() + near.evals + far.evals)
    }

    /// −2^{α−1}Γ(α/2)/Γ(1−α/2) · lim_{y→0} y^{1−α} ∂_y U(x, y).
    pub fn extension(&self, x: f64) -> Result<RouteValue> {
        if self.is_constant() {
            return self.value(RouteId::Extension, 0.0, 0.0, 0);
        }
        let spec = self.spectrum_for(x)?;
        let evals = spec.evals();
        let sol = ExtensionSolution::with_spectrum(&self.u, self.alpha, &self.params, &self.budget, spec)?;
        let ys = default_y_sequence(&self.u, &self.budget);
        let lim = neumann_limit(&sol, x, &ys)?;
        self.value(RouteId::Extension, lim.value, lim.err, evals + 2 * ys.len())
    }
}
