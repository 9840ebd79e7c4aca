//! Gamma function family.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Taylor coefficients of 1/Γ(z) about z = 0 (coefficient of z^{j+1}).
const RECIP_GAMMA: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
    1.714_406_321_927_337_433_4e-20,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Γ(x) for real x; poles return NaN.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x.abs() < 0.5 {
        return 1.0 / recip_gamma_small(x);
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    // Integer arguments are exact.
    if x == x.floor() && x <= 30.0 {
        let mut acc = 1.0;
        let mut j = 2.0;
        while j < x {
            acc *= j;
            j += 1.0;
        }
        return acc;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    if x < 20.0 {
        return gamma(x).abs().ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// 1/Γ(x), finite everywhere (zero at the poles of Γ).
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x.abs() < 0.5 {
        return recip_gamma_small(x);
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    1.0 / gamma(x)
}

fn recip_gamma_small(x: f64) -> f64 {
    let mut acc = 0.0;
    for c in RECIP_GAMMA.iter().rev() {
        acc = acc * x + c;
    }
    acc * x
}

/// |Γ(−s)| for s in (0, 2), via Γ(1−s)/s (reflection through the pole at 0).
pub fn abs_gamma_neg_half_open(s: f64) -> f64 {
    (gamma(1.0 - s) / s).abs()
}

/// The Temme auxiliary functions for |mu| ≤ 1/2:
/// returns (gam1, gam2, 1/Γ(1+mu), 1/Γ(1−mu)).
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let m2 = mu * mu;
    let mut even = 0.0;
    let mut odd = 0.0;
    // c_{2j} -> even series in mu^2, c_{2j+1} -> odd series.
    for j in (0..15).rev() {
        even = even * m2 + RECIP_GAMMA[2 * j + 1];
        odd = odd * m2 + RECIP_GAMMA[2 * j];
    }
    let gam1 = -even;
    let gam2 = odd;
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// Pochhammer symbol (a)_n.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for j in 0..n {
        p *= a + j as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        assert_eq!(gamma(5.0), 24.0);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma(1.5) - 0.5 * PI.sqrt()).abs() < 1e-15);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!(gamma(-2.0).is_nan());
    }

    #[test]
    fn temme_pair_matches_direct() {
        for &mu in &[-0.4, -0.1, 0.0, 0.2, 0.5] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            assert!((gp - recip_gamma(1.0 + mu)).abs() < 1e-15);
            assert!((gm - recip_gamma(1.0 - mu)).abs() < 1e-15);
            if mu != 0.0 {
                let direct = (recip_gamma(1.0 - mu) - recip_gamma(1.0 + mu)) / (2.0 * mu);
                assert!((g1 - direct).abs() < 1e-13);
            }
            assert!((g2 - 0.5 * (gm + gp)).abs() < 1e-15);
        }
    }

    #[test]
    fn ln_gamma_large() {
        // ln Γ(100) = ln(99!)
        let exact = 359.134_205_369_575_4;
        assert!((ln_gamma(100.0) - exact).abs() < 1e-12 * exact);
    }
}
