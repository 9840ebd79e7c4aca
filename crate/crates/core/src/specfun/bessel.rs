//! Real-order Bessel functions J, I, K and the normalized 𝒥.
//!
//! Small arguments use the ascending series, large arguments the Hankel
//! expansion, and the middle range Steed's continued-fraction method with
//! Temme's series for the Y/K seed.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{gamma, recip_gamma, temme_gammas};
use crate::error::{domain, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselKind {
    J,
    I,
    K,
    NormalizedJ,
}

/// Checked entry point: validates the order and argument for `kind`.
pub fn bessel(kind: BesselKind, nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return domain(format!("Bessel order {nu} must exceed -1"));
    }
    if !x.is_finite() {
        return domain(format!("Bessel argument {x} is not finite"));
    }
    let integer_order = nu == nu.floor();
    match kind {
        BesselKind::NormalizedJ => Ok(normalized_j(nu, x)),
        BesselKind::K => {
            if x <= 0.0 {
                return domain("K_nu is singular at 0 and undefined for negative arguments");
            }
            Ok(bessel_k(nu, x))
        }
        BesselKind::J | BesselKind::I => {
            if x < 0.0 && !integer_order {
                return domain(format!(
                    "{kind:?}_nu at negative argument requires an integer order, got {nu}"
                ));
            }
            let v = if kind == BesselKind::J {
                bessel_j(nu, x.abs())
            } else {
                bessel_i(nu, x.abs())
            };
            let odd = x < 0.0 && (nu as i64) % 2 != 0;
            Ok(if odd { -v } else { v })
        }
    }
}

/// Σ (sign·z²/4)^n / (n! (ν+1)_n).
fn normalized_series(nu: f64, x: f64, sign: f64) -> f64 {
    let q = sign * 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..500 {
        let nf = n as f64;
        term *= q / (nf * (nu + nf));
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            break;
        }
    }
    sum
}

fn use_series(nu: f64, x: f64) -> bool {
    x < 2.0 || x * x < nu + 1.0
}

fn use_hankel(nu: f64, x: f64) -> bool {
    x >= 25.0 && x >= nu * nu
}

/// 𝒥_ν(x) = Γ(ν+1)(2/x)^ν J_ν(x), even in x, equal to 1 at 0.
pub fn normalized_j(nu: f64, x: f64) -> f64 {
    let x = x.abs();
    if use_series(nu, x) {
        return normalized_series(nu, x, -1.0);
    }
    let j = bessel_j(nu, x);
    scale_factor(nu, x) * j
}

/// Γ(ν+1)(2/x)^ν
fn scale_factor(nu: f64, x: f64) -> f64 {
    if nu + 1.0 < 170.0 {
        gamma(nu + 1.0) * (2.0 / x).powf(nu)
    } else {
        (super::gamma::ln_gamma(nu + 1.0) + nu * (2.0 / x).ln()).exp()
    }
}

/// J_ν(x) for ν > −1, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if use_series(nu, x) {
        return (0.5 * x).powf(nu) * recip_gamma(nu + 1.0) * normalized_series(nu, x, -1.0);
    }
    if use_hankel(nu, x) {
        return hankel_jy(nu, x).0;
    }
    if nu >= 0.0 {
        steed_jy(nu, x).0
    } else {
        let mu = -nu;
        let (j, y) = steed_jy(mu, x);
        (mu * PI).cos() * j - (mu * PI).sin() * y
    }
}

/// Y_ν(x) for ν ≥ 0, x > 0.
pub fn bessel_y(nu: f64, x: f64) -> f64 {
    if use_hankel(nu, x) {
        hankel_jy(nu, x).1
    } else {
        steed_jy(nu, x).1
    }
}

/// I_ν(x) for ν > −1, x ≥ 0.
pub fn bessel_i(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x < 2.0 || x * x < nu + 1.0 {
        return (0.5 * x).powf(nu) * recip_gamma(nu + 1.0) * normalized_series(nu, x, 1.0);
    }
    if nu >= 0.0 {
        steed_ik(nu, x).0
    } else {
        let mu = -nu;
        let (i, k) = steed_ik(mu, x);
        i + 2.0 / PI * (mu * PI).sin() * k
    }
}

/// K_ν(x) for x > 0 (K is even in ν).
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    steed_ik(nu.abs(), x).1
}

/// Hankel asymptotic expansion; returns (J_ν, Y_ν).
fn hankel_jy(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    let kmax = (2.0 * x) as usize + 2;
    for k in 1..kmax {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < EPS * 1e-2 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// Steed's method for J_ν, Y_ν with ν ≥ 0, x > 0.
fn steed_jy(nu: f64, x: f64) -> (f64, f64) {
    const XMIN: f64 = 2.0;
    let nl = if x < XMIN {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = if rjl >= 0.0 { mag } else { -mag };
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    let _ = rjp1;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    (rj, rymu)
}

/// Steed's method for I_ν, K_ν with ν ≥ 0, x > 0.
fn steed_ik(nu: f64, x: f64) -> (f64, f64) {
    const XMIN: f64 = 2.0;
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    let mut ril = 1e-30;
    let mut ripl = h * ril;
    let ril1 = ril;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    let (mut rkmu, mut rk1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let ri = rimu * ril1 / ril;
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    (ri, rkmu)
}

/// First `count` positive zeros of J_ν (ν > −1), by McMahon guesses refined with Newton.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Vec<f64> {
    let mu = 4.0 * nu * nu;
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    let mut m = 1usize;
    while zeros.len() < count {
        let beta = (m as f64 + 0.5 * nu - 0.25) * PI;
        let mut z = beta - (mu - 1.0) / (8.0 * beta)
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta).powi(3));
        if let Some(&last) = zeros.last() {
            if z <= last + 0.5 {
                z = last + PI;
            }
        } else if z <= 0.0 {
            z = 0.5 * (nu + 1.0).max(0.5) + 1.0;
        }
        for _ in 0..60 {
            let j = bessel_j(nu, z);
            let dj = nu / z * j - bessel_j(nu + 1.0, z);
            let step = j / dj;
            let next = z - step;
            z = if next > 0.0 { next } else { 0.5 * z };
            if step.abs() < 1e-15 * z {
                break;
            }
        }
        if zeros.last().map_or(true, |&l| z > l + 1e-6) {
            zeros.push(z);
        }
        m += 1;
    }
    zeros
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.3, 1.7, 3.2, 8.0, 19.0, 40.0, 150.0] {
            assert!((normalized_j(-0.5, x) - x.cos()).abs() < 1e-13, "x={x}");
            assert!((normalized_j(0.5, x) - x.sin() / x).abs() < 1e-13, "x={x}");
            let k = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(rel(bessel_k(0.5, x), k) < 1e-13, "x={x}");
        }
        assert!((normalized_j(-0.5, PI) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn checked_entry_rejects_bad_inputs() {
        assert!(bessel(BesselKind::K, 0.5, 0.0).is_err());
        assert!(bessel(BesselKind::J, -1.0, 1.0).is_err());
        assert!(bessel(BesselKind::J, 0.5, -1.0).is_err());
        assert!((bessel(BesselKind::J, 1.0, -1.0).unwrap() + bessel_j(1.0, 1.0)).abs() < 1e-16);
        assert_eq!(bessel(BesselKind::NormalizedJ, 3.3, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn zeros_of_j0() {
        let z = bessel_j_zeros(0.0, 3);
        assert!((z[0] - 2.404_825_557_695_773).abs() < 1e-13);
        assert!((z[1] - 5.520_078_110_286_311).abs() < 1e-13);
        assert!((z[2] - 8.653_727_912_911_013).abs() < 1e-13);
    }
}
