//! Gaussian rules from three-term recurrences (Golub–Welsch with Newton polish).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{gamma, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    /// Unit weight on (a, b).
    Legendre { a: f64, b: f64 },
    /// Weight (b − t)^p (t − a)^q on (a, b).
    Jacobi { a: f64, b: f64, p: f64, q: f64 },
    /// Weight t^p e^{−t} on (0, ∞).
    SemiInfinite { p: f64 },
}

/// An immutable set of nodes and weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
}

impl QuadRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i), accumulated in node order.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Affine image of a rule on (−1, 1) onto (a, b); the weight function is carried along.
    pub fn mapped(&self, a: f64, b: f64) -> QuadRule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let (scale, domain) = match self.domain {
            Domain::Legendre { .. } => (half, Domain::Legendre { a, b }),
            Domain::Jacobi { p, q, .. } => (half.powf(p + q + 1.0), Domain::Jacobi { a, b, p, q }),
            Domain::SemiInfinite { .. } => return self.clone(),
        };
        QuadRule {
            nodes: self.nodes.iter().map(|&t| mid + half * t).collect(),
            weights: self.weights.iter().map(|&w| w * scale).collect(),
            domain,
        }
    }
}

/// n-point Gauss–Legendre rule on (−1, 1).
pub fn gauss_legendre(n: usize) -> QuadRule {
    let mut rule = gauss_jacobi(n, 0.0, 0.0).expect("Legendre parameters are valid");
    rule.domain = Domain::Legendre { a: -1.0, b: 1.0 };
    rule
}

/// n-point Gauss–Jacobi rule for the weight (1 − t)^p (1 + t)^q on (−1, 1).
pub fn gauss_jacobi(n: usize, p: f64, q: f64) -> Result<QuadRule> {
    if n == 0 {
        return domain("a quadrature rule needs at least one node");
    }
    if !(p > -1.0 && q > -1.0) {
        return domain(format!("Jacobi exponents must exceed -1, got p={p}, q={q}"));
    }
    let s = p + q;
    let diag = |j: usize| -> f64 {
        if j == 0 {
            (q - p) / (s + 2.0)
        } else {
            let jf = j as f64;
            (q * q - p * p) / ((2.0 * jf + s) * (2.0 * jf + s + 2.0))
        }
    };
    let off2 = |j: usize| -> f64 {
        let jf = j as f64;
        let t = 2.0 * jf + s;
        if j == 1 {
            4.0 * (1.0 + p) * (1.0 + q) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
        } else {
            4.0 * jf * (jf + p) * (jf + q) * (jf + s) / (t * t * (t + 1.0) * (t - 1.0))
        }
    };
    let ln_mu0 = (s + 1.0) * std::f64::consts::LN_2 + ln_gamma(p + 1.0) + ln_gamma(q + 1.0)
        - ln_gamma(s + 2.0);
    let (nodes, weights) = from_recurrence(n, diag, off2, ln_mu0.exp());
    Ok(QuadRule { nodes, weights, domain: Domain::Jacobi { a: -1.0, b: 1.0, p, q } })
}

/// n-point generalized Gauss–Laguerre rule for t^p e^{−t} on (0, ∞).
pub fn gauss_laguerre(n: usize, p: f64) -> Result<QuadRule> {
    if n == 0 {
        return domain("a quadrature rule needs at least one node");
    }
    if !(p > -1.0) {
        return domain(format!("Laguerre exponent must exceed -1, got {p}"));
    }
    let diag = |j: usize| 2.0 * j as f64 + p + 1.0;
    let off2 = |j: usize| j as f64 * (j as f64 + p);
    let (nodes, weights) = from_recurrence(n, diag, off2, gamma(p + 1.0));
    Ok(QuadRule { nodes, weights, domain: Domain::SemiInfinite { p } })
}

type RuleKey = (u64, u64, usize);

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<QuadRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`gauss_jacobi`]; rules are immutable so sharing them is free.
pub fn gauss_jacobi_cached(n: usize, p: f64, q: f64) -> Result<Arc<QuadRule>> {
    let key = (p.to_bits(), q.to_bits(), n);
    if let Some(rule) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_jacobi(n, p, q)?);
    cache()
        .lock()
        .expect("rule cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Nodes from the Jacobi matrix eigenvalues, polished by Newton on the orthonormal
/// recurrence; weights from the Christoffel function.
fn from_recurrence(
    n: usize,
    diag: impl Fn(usize) -> f64,
    off2: impl Fn(usize) -> f64,
    mu0: f64,
) -> (Vec<f64>, Vec<f64>) {
    let a: Vec<f64> = (0..n).map(&diag).collect();
    let b: Vec<f64> = (0..=n).map(|j| if j == 0 { 0.0 } else { off2(j).sqrt() }).collect();

    let mut d = a.clone();
    let mut e: Vec<f64> = (0..n).map(|j| if j + 1 < n { b[j + 1] } else { 0.0 }).collect();
    tridiagonal_eigenvalues(&mut d, &mut e);
    d.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));

    let p0 = 1.0 / mu0.sqrt();
    // Returns (p_n(t), p_n'(t), Σ_{j<n} p_j(t)²).
    let eval = |t: f64| -> (f64, f64, f64) {
        let (mut pm, mut p) = (0.0, p0);
        let (mut dpm, mut dp) = (0.0, 0.0);
        let mut sum = p * p;
        for j in 0..n {
            let pn = ((t - a[j]) * p - b[j] * pm) / b[j + 1].max(f64::MIN_POSITIVE);
            let dpn = (p + (t - a[j]) * dp - b[j] * dpm) / b[j + 1].max(f64::MIN_POSITIVE);
            pm = p;
            p = pn;
            dpm = dp;
            dp = dpn;
            if j + 1 < n {
                sum += p * p;
            }
        }
        (p, dp, sum)
    };

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (i, &guess) in d.iter().enumerate() {
        let lo = if i == 0 { f64::NEG_INFINITY } else { 0.5 * (d[i - 1] + guess) };
        let hi = if i + 1 == n { f64::INFINITY } else { 0.5 * (guess + d[i + 1]) };
        let mut t = guess;
        if n > 1 {
            for _ in 0..4 {
                let (p, dp, _) = eval(t);
                if dp == 0.0 || !dp.is_finite() {
                    break;
                }
                let next = t - p / dp;
                if !(next > lo && next < hi) {
                    break;
                }
                let done = (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1e-300);
                t = next;
                if done {
                    break;
                }
            }
        }
        let (_, _, sum) = eval(t);
        nodes.push(t);
        weights.push(1.0 / sum);
    }
    (nodes, weights)
}

/// Eigenvalues of a symmetric tridiagonal matrix (implicit QL). `e[i]` couples `d[i]`
/// and `d[i + 1]`; on return `d` holds the eigenvalues in no particular order.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_legendre() {
        let r = gauss_legendre(1);
        assert!(r.nodes()[0].abs() < 1e-16);
        assert!((r.weights()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn legendre_matches_known_nodes() {
        let r = gauss_legendre(3);
        let x = (0.6f64).sqrt();
        assert!((r.nodes()[0] + x).abs() < 1e-15);
        assert!((r.nodes()[2] - x).abs() < 1e-15);
        assert!((r.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn laguerre_moments() {
        let r = gauss_laguerre(12, 0.5).unwrap();
        for m in 0..12 {
            let exact = gamma(m as f64 + 1.5);
            let got = r.integrate(|t| t.powi(m));
            assert!((got - exact).abs() < 1e-12 * exact, "m={m}");
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(gauss_jacobi(4, -1.0, 0.0).is_err());
        assert!(gauss_jacobi(0, 0.0, 0.0).is_err());
    }
}
