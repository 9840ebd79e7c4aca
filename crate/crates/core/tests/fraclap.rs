mod common;

use dunkl_frac::budget::Budget;
use dunkl_frac::dunkl1d::{
    constant, dunkl_laplacian_1d, dunkl_transform, gaussian, Decay, DunklParams, Spectrum, TestFunction,
};
use dunkl_frac::fraclap::*;
use dunkl_frac::quadrature::Tolerance;
use dunkl_frac::specfun::{classical_constant, gamma, ConstantSet};
use std::f64::consts::PI;
use std::sync::Arc;

fn origin_value(k: f64, alpha: f64) -> f64 {
    2f64.powf(0.5 * alpha) * gamma(k + 0.5 + 0.5 * alpha) / gamma(k + 0.5)
}

#[test]
fn spectral_route_at_the_origin() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.0).unwrap();
    let v = spectral_route(&gaussian(), 0.0, 1.0, &p, &b).unwrap();
    assert!((v.value - (2.0 / PI).sqrt()).abs() < 1e-12);
    let p = DunklParams::rank_one(0.5).unwrap();
    let v = spectral_route(&gaussian(), 0.0, 1.0, &p, &b).unwrap();
    assert!((v.value - (PI / 2.0).sqrt()).abs() < 1e-12);
    // Without the attached transform the spectrum is sampled by quadrature.
    for &k in &[0.0, 0.5, 1.5] {
        let p = DunklParams::rank_one(k).unwrap();
        for &alpha in &[0.5, 1.0, 1.5] {
            let v = spectral_route(&gaussian().without_transform(), 0.0, alpha, &p, &b).unwrap();
            let exact = origin_value(k, alpha);
            assert!((v.value - exact).abs() < 1e-8 * exact, "k={k} alpha={alpha}");
        }
    }
}

#[test]
fn spectral_route_tends_to_minus_laplacian() {
    let b = Budget::default();
    for &k in &[0.0, 0.5] {
        let p = DunklParams::rank_one(k).unwrap();
        for &x in &[0.0, 0.5, 2.0] {
            let v = spectral_route(&gaussian(), x, 1.999, &p, &b).unwrap().value;
            let lap = -dunkl_laplacian_1d(&gaussian(), x, &p).unwrap();
            assert!((v - lap).abs() < 5e-3 * lap.abs(), "k={k} x={x}: {v} vs {lap}");
        }
    }
}

#[test]
fn every_route_matches_reference_values() {
    let b = Budget::default();
    for row in common::frac_reference().iter().filter(|r| r.d == 1) {
        let p = DunklParams::rank_one(row.k).unwrap();
        let u = common::reference_function(&row.function);
        let ev = RouteEvaluator::new(&u, row.alpha, &p, &b).unwrap();
        let scale = row.value.abs().max(0.1);
        for route in RouteId::ALL {
            let v = ev.evaluate(route, row.x).unwrap();
            let tol = route_tolerance(route, RouteId::Spectral);
            assert!((v.value - row.value).abs() < tol * scale, "{route} {row:?}: {}", v.value);
        }
    }
}

#[test]
fn pointwise_modes_agree() {
    let b = Budget::default();
    for &(k, alpha) in &[(0.0, 0.5), (0.5, 1.0), (1.5, 1.5), (0.3, 0.8)] {
        let p = DunklParams::rank_one(k).unwrap();
        let ev = RouteEvaluator::new(&gaussian(), alpha, &p, &b).unwrap();
        for &x in &[0.0, 0.5, 2.0] {
            let s = ev.pointwise(x, PointwiseMode::Symmetric).unwrap().value;
            for mode in [PointwiseMode::Unrolled, PointwiseMode::PrincipalValue] {
                let v = ev.pointwise(x, mode).unwrap().value;
                assert!((v - s).abs() < 1e-8 * s.abs().max(0.1), "{mode:?} k={k} alpha={alpha} x={x}");
            }
        }
    }
}

#[test]
fn spherical_route_equals_pointwise_route_in_rank_one() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.3).unwrap();
    let u = gaussian();
    let s = spherical_route(&u, 0.7, 0.8, &p, &b).unwrap().value;
    let q = pointwise_route(&u, 0.7, 0.8, &p, PointwiseMode::Symmetric, &b).unwrap().value;
    assert!((s - q).abs() < 1e-10);
}

#[test]
fn pointwise_constant_reduces_to_the_classical_one() {
    for &alpha in &[0.5, 1.0, 1.5] {
        for d in 1..=3 {
            let c = ConstantSet::new(0.0, d, alpha).unwrap();
            assert!((c.gamma_kd_alpha - classical_constant(d, alpha)).abs() < 1e-14 * c.gamma_kd_alpha);
        }
        // Classical half-Laplacian-type quadrature with the classical constant.
        let b = Budget::default();
        let p = DunklParams::rank_one(0.0).unwrap();
        let route = pointwise_route(&gaussian(), 0.4, alpha, &p, PointwiseMode::Symmetric, &b).unwrap().value;
        let spectral = spectral_route(&gaussian(), 0.4, alpha, &p, &b).unwrap().value;
        assert!((route - spectral).abs() < 1e-9);
    }
}

#[test]
fn constants_are_annihilated() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.5).unwrap();
    let ev = RouteEvaluator::new(&constant(2.5), 1.2, &p, &b).unwrap();
    for route in RouteId::ALL {
        assert_eq!(ev.evaluate(route, 0.3).unwrap().value, 0.0, "{route}");
    }
}

#[test]
fn kernel_identity_on_half_and_full_line() {
    let p = DunklParams::rank_one(0.4).unwrap();
    let alpha = 0.9;
    let gamma_k = ConstantSet::new(0.4, 1, alpha).unwrap().gamma_kd_alpha;
    let tol = Tolerance::new(1e-14, 1e-11);
    for &xi in &[0.5f64, 1.0, 2.0] {
        let target = gamma_k * xi.powf(alpha);
        let half = kernel_integral(xi, alpha, &p, LineDomain::HalfLine, tol).unwrap().value;
        let full = kernel_integral(xi, alpha, &p, LineDomain::FullLine, tol).unwrap().value;
        assert!((half - target).abs() < 1e-6 * target, "xi={xi}: {half} vs {target}");
        assert!((full - 2.0 * target).abs() < 2e-6 * target, "xi={xi}");
    }
}

#[test]
fn homogeneity_under_dilation() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.5).unwrap();
    let alpha = 1.3f64;
    let u = gaussian();
    let us = u.dilate(2.0);
    for &x in &[0.0, 0.3, 0.9] {
        let lhs = spectral_route(&us, x, alpha, &p, &b).unwrap().value;
        let rhs = 2f64.powf(alpha) * spectral_route(&u, 2.0 * x, alpha, &p, &b).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-9 * rhs.abs().max(1.0), "x={x}");
    }
}

/// (−Δ_k)^{β/2} u as a function, through the spectral route.
fn spectral_image(u: &TestFunction, beta: f64, p: &DunklParams) -> TestFunction {
    let ev = Arc::new(RouteEvaluator::new(u, beta, p, &Budget::default()).unwrap());
    ev.spectrum().unwrap();
    let decay = Decay::Algebraic { exponent: 1.0 + 2.0 * p.k + beta };
    TestFunction::new("spectral-image", decay, move |x| ev.spectral(x).unwrap().value)
}

#[test]
fn transform_of_the_operator_is_the_symbol() {
    let p = DunklParams::rank_one(0.5).unwrap();
    let alpha = 1.0;
    let v = spectral_image(&gaussian(), alpha, &p);
    let tol = Tolerance::new(1e-12, 1e-9);
    for &xi in &[0.5f64, 1.0, 2.0] {
        let (fv, _) = dunkl_transform(&v, xi, &p, tol).unwrap();
        let fu = gaussian().known_transform(&p, xi).unwrap();
        let want = xi.powf(alpha) * fu.re;
        assert!((fv.re - want).abs() < 1e-5 * want && fv.im.abs() < 1e-5, "xi={xi}: {fv} vs {want}");
    }
}

#[test]
fn orders_add_under_composition() {
    let p = DunklParams::rank_one(0.5).unwrap();
    let b = Budget::default();
    let alpha = 1.2f64;
    let u = gaussian().without_transform();
    let spec = Spectrum::compute(&u, &p, b.x_max, &b).unwrap();
    let (xs, fu): (Vec<f64>, Vec<_>) = spec.samples().unzip();
    let m = |xi: f64| xi.powf(0.5 * alpha);
    let even: Vec<f64> = xs.iter().zip(&fu).map(|(&xi, f)| m(xi) * f.re).collect();
    let half = Spectrum::from_samples(spec.grid().clone(), spec.order(), even, None, vec![0.0; xs.len()], 0).unwrap();
    for &x in &[0.0, 0.7] {
        let direct_half = spectral_route(&u, x, 0.5 * alpha, &p, &b).unwrap().value;
        assert!((half.apply(|_| 1.0, x).0 - direct_half).abs() < 1e-10);
        let twice = half.apply(m, x).0;
        let once = spectral_route(&u, x, alpha, &p, &b).unwrap().value;
        assert!((twice - once).abs() < 1e-7 * once.abs(), "x={x}: {twice} vs {once}");
    }
}

#[test]
fn cross_check_reports() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.5).unwrap();
    let points = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let reports = cross_check(&gaussian(), &points, 1.0, &p, &RouteId::ALL, 1e-5, &b).unwrap();
    assert_eq!(reports.len(), 5);
    for r in &reports {
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.values.len(), 5);
        let order: Vec<RouteId> = r.values.iter().map(|v| v.route).collect();
        assert_eq!(order, RouteId::ALL);
        assert!(!r.ill_conditioned);
        let max_err = r.values.iter().map(|v| v.err_est).fold(0.0, f64::max);
        assert!(r.max_pairwise_dev <= 10.0 * max_err, "{r:?}");
    }

    let single = cross_check(&gaussian(), &points, 1.0, &p, &[RouteId::Bochner], 1e-5, &b).unwrap();
    assert!(single.iter().all(|r| r.max_pairwise_dev == 0.0 && r.passed()));

    let strict = cross_check(&gaussian(), &points, 1.0, &p, &RouteId::ALL, 0.0, &b).unwrap();
    assert!(strict.iter().all(|r| !r.passed()));

    let flagged = cross_check(&gaussian(), &[0.0], 1.97, &p, &[RouteId::Spectral], 1e-5, &b).unwrap();
    assert!(flagged[0].ill_conditioned);
}

#[test]
fn route_errors_are_recorded_not_raised() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.5).unwrap();
    // Algebraic decay has no bounded support, so the quadrature routes refuse it.
    let u = TestFunction::new("rational", Decay::Algebraic { exponent: 4.0 }, |x| 1.0 / (1.0 + x * x).powi(2));
    let reports = cross_check(&u, &[0.0], 1.0, &p, &[RouteId::Pointwise, RouteId::SphericalMean], 1e-5, &b).unwrap();
    assert_eq!(reports[0].failures.len(), 2);
    assert!(!reports[0].passed());
}

#[test]
fn invalid_inputs_are_rejected() {
    let b = Budget::default();
    let p = DunklParams::rank_one(0.5).unwrap();
    assert!(spectral_route(&gaussian(), 0.0, 2.0, &p, &b).is_err());
    assert!(RouteEvaluator::new(&gaussian(), 1.0, &DunklParams::new(0.5, 2).unwrap(), &b).is_err());
    assert!(cross_check(&gaussian(), &[0.0], 1.0, &p, &RouteId::ALL, -1.0, &b).is_err());
    assert!(cross_check(&gaussian(), &[0.0], 1.0, &p, &[], 1e-5, &b).is_err());
    assert_eq!("spherical".parse::<RouteId>().unwrap(), RouteId::SphericalMean);
    assert!("laplace".parse::<RouteId>().is_err());
}
