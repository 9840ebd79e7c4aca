use dunkl_frac::specfun::{
    bessel, bessel_i, bessel_j, bessel_k, classical_constant, gamma, normalized_j, BesselKind,
    ConstantSet,
};

const TABLE: &str = include_str!("data/bessel_reference.csv");

#[test]
fn bessel_sweep_matches_reference_table() {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for line in TABLE.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let nu: f64 = f[1].parse().unwrap();
        let x: f64 = f[2].parse().unwrap();
        let want: f64 = f[3].parse().unwrap();
        let scale: f64 = f[4].parse().unwrap();
        let got = match f[0] {
            "J" => bessel_j(nu, x),
            "NJ" => normalized_j(nu, x),
            "I" => bessel_i(nu, x),
            "K" => bessel_k(nu, x),
            other => panic!("unknown kind {other}"),
        };
        let err = (got - want).abs() / scale;
        worst = worst.max(err);
        if !(err < 1e-12) {
            failures.push(format!("{} nu={nu} x={x}: got {got:e} want {want:e} err {err:e}", f[0]));
        }
    }
    assert!(failures.is_empty(), "worst {worst:e}\n{}", failures.join("\n"));
}

#[test]
fn normalized_j_agrees_with_scaled_j() {
    for &nu in &[-0.5, 0.0, 0.7, 2.5, 12.0] {
        for &x in &[0.5, 3.0, 11.0, 40.0] {
            let direct = gamma(nu + 1.0) * (2.0 / x as f64).powf(nu) * bessel_j(nu, x);
            let n = normalized_j(nu, x);
            assert!((n - direct).abs() <= 1e-12 * direct.abs().max(1e-3));
        }
    }
}

#[test]
fn k_small_argument_asymptotics() {
    let z: f64 = 1e-4;
    for &nu in &[0.25, 0.5, 0.75] {
        let k = bessel(BesselKind::K, nu, z).unwrap();
        let leading = 2f64.powf(nu - 1.0) * gamma(nu) * z.powf(-nu);
        // The first correction is relative (z/2)^{2 nu} Γ(1-nu)/Γ(1+nu), which is
        // 7e-3 at nu = 1/4, so the one-term ratio only tends to 1 slowly.
        let two_term = std::f64::consts::PI / (2.0 * (nu * std::f64::consts::PI).sin())
            * ((0.5 * z).powf(-nu) / gamma(1.0 - nu) - (0.5 * z).powf(nu) / gamma(1.0 + nu));
        assert!((k / two_term - 1.0).abs() < 1e-7, "nu={nu}");
        let predicted = (0.5 * z).powf(2.0 * nu) * gamma(1.0 - nu) / gamma(1.0 + nu);
        assert!((1.0 - k / leading - predicted).abs() < 1e-3 * predicted + 2e-8, "nu={nu}");
        for &zz in &[1e-6, 1e-10, 1e-14] {
            let r = bessel(BesselKind::K, nu, zz).unwrap()
                / (2f64.powf(nu - 1.0) * gamma(nu) * zz.powf(-nu));
            let bound = (0.5 * zz).powf(2.0 * nu) * gamma(1.0 - nu) / gamma(1.0 + nu);
            assert!((r - 1.0).abs() < 1.01 * bound + 1e-13, "{nu} {zz} {r}");
        }
    }
    let v = bessel(BesselKind::K, 0.5, 1.0).unwrap();
    assert!((v - 0.461_068_504_447_894_4).abs() < 1e-15);
}

#[test]
fn k_zero_constants_match_classical() {
    for d in 1..=3 {
        for &alpha in &[0.5, 1.0, 1.5] {
            let c = ConstantSet::new(0.0, d, alpha).unwrap();
            let r = c.gamma_kd_alpha / classical_constant(d, alpha);
            assert!((r - 1.0).abs() < 4.0 * f64::EPSILON, "d={d} alpha={alpha} ratio {r}");
        }
    }
}

#[test]
fn constants_are_positive_and_consistent() {
    for &k in &[0.0, 0.3, 1.0, 2.5] {
        for d in 1..=4 {
            for &alpha in &[0.1, 0.9, 1.9] {
                let c = ConstantSet::new(k, d, alpha).unwrap();
                for v in [
                    c.c_k,
                    c.sigma_k_d,
                    c.gamma_kd_alpha,
                    c.pi_kd_alpha,
                    c.varsigma_alpha,
                    c.b_k_alpha,
                ] {
                    assert!(v.is_finite() && v > 0.0);
                }
                // The Riesz constant changes sign once alpha passes 2k + d.
                assert!(c.d_k_alpha.is_finite());
                assert_eq!(c.d_k_alpha > 0.0, alpha < 2.0 * k + d as f64);
                assert!((c.pi_kd_alpha * 2.0 * c.sigma_k_d - c.gamma_kd_alpha).abs() < 1e-13 * c.gamma_kd_alpha);
                if d == 1 {
                    let r = 2.0 / c.gamma_kd_alpha / c.rank_one_prefactor();
                    assert!((r - 1.0).abs() < 1e-13);
                }
            }
        }
    }
}
