//! Tails of Bessel-type oscillatory integrals: integrate between consecutive zeros and
//! accelerate the partial sums with Wynn's epsilon algorithm.

use super::adaptive::{integrate, Integral, Tolerance};
use crate::error::{Error, Result};
use crate::specfun::bessel_j_zeros;

/// ∫_start^∞ f(s) ds for an integrand oscillating like J_ν(ω s).
///
/// Panels end at the zeros of J_ν(ω s); at most `max_cycles` panels are summed.
pub fn integrate_bessel_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    nu: f64,
    omega: f64,
    start: f64,
    tol: Tolerance,
    max_cycles: usize,
) -> Result<Integral> {
    if omega == 0.0 {
        return Err(Error::Domain("oscillation frequency must be nonzero".into()));
    }
    let omega = omega.abs();
    let zeros = bessel_j_zeros(nu, max_cycles + (start * omega / std::f64::consts::PI) as usize + 2);
    let mut breaks: Vec<f64> = vec![start];
    breaks.extend(zeros.iter().map(|z| z / omega).filter(|&s| s > start));
    breaks.truncate(max_cycles + 1);

    let mut total = Integral::zero();
    let mut partial = Vec::with_capacity(breaks.len());
    let mut last: Option<f64> = None;
    let mut prev_diff = f64::INFINITY;
    for w in breaks.windows(2) {
        let panel = integrate(&f, w[0], w[1], tol)?;
        total = total.add(panel);
        partial.push(total.value);
        if partial.len() >= 6 {
            let est = wynn_epsilon(&partial);
            if let Some(prev) = last {
                let diff = (est - prev).abs();
                if diff <= tol.target(est) && prev_diff <= tol.target(est) {
                    return Ok(Integral { value: est, abs_err: diff.max(total.abs_err), ..total });
                }
                prev_diff = diff;
            }
            last = Some(est);
        }
    }
    let value = last.unwrap_or(total.value);
    Err(Error::Accuracy { requested: tol.target(value), achieved: prev_diff })
}

/// Wynn's epsilon extrapolation of a sequence of partial sums; returns the last entry
/// of the highest even column.
pub fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap_or(&0.0);
    }
    // prev = column k-1, cur = column k
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = s.to_vec();
    let mut best = s[n - 1];
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let base = prev[i + 1];
            if diff == 0.0 {
                next.push(f64::INFINITY);
            } else {
                next.push(base + 1.0 / diff);
            }
        }
        prev = cur;
        cur = next;
        col += 1;
        if col % 2 == 0 {
            match cur.last() {
                Some(v) if v.is_finite() => best = *v,
                _ => break,
            }
        }
    }
    best
}
