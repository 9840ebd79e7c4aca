use dunkl_frac::budget::Budget;
use dunkl_frac::dunkl1d::*;
use dunkl_frac::quadrature::Tolerance;
use num_complex::Complex64;

fn params(k: f64) -> DunklParams {
    DunklParams::rank_one(k).unwrap()
}

fn heat_closed_form(k: f64, t: f64, x: f64) -> f64 {
    (1.0 + 2.0 * t).powf(-(k + 0.5)) * (-x * x / (2.0 * (1.0 + 2.0 * t))).exp()
}

#[test]
fn transform_matches_closed_forms() {
    let tol = Tolerance::new(1e-15, 1e-12);
    for &k in &[0.0, 0.3, 1.0, 2.5] {
        let p = params(k);
        for f in [gaussian(), poly_gaussian(), odd_gaussian_with_rate(0.7), bump_gaussian()] {
            for &xi in &[-3.0, -0.4, 0.0, 0.9, 4.0] {
                let want = f.known_transform(&p, xi).unwrap();
                let (got, err) = dunkl_transform(&f.clone().without_transform(), xi, &p, tol).unwrap();
                assert!((got - want).norm() < 1e-11, "{} k={k} xi={xi}: {got} vs {want}", f.label());
                assert!(err < 1e-9);
            }
        }
    }
}

#[test]
fn inverse_transform_of_gaussian_is_itself() {
    let p = params(0.8);
    let (v, _) = inverse_dunkl_transform(&gaussian().without_transform(), 1.3, &p, Tolerance::default()).unwrap();
    assert!((v - Complex64::new((-0.845f64).exp(), 0.0)).norm() < 1e-12);
}

#[test]
fn spectral_round_trip() {
    let budget = Budget::default();
    for &k in &[0.0, 0.5, 1.7] {
        let p = params(k);
        for f in [poly_gaussian().without_transform(), bump_gaussian()] {
            let spec = Spectrum::compute(&f, &p, 6.0, &budget).unwrap();
            for &x in &[-5.0, -1.2, 0.0, 0.3, 2.0, 6.0] {
                let (v, err) = spec.apply(|_| 1.0, x);
                assert!((v - f.eval(x)).abs() < 1e-8, "{} k={k} x={x}: {v} vs {}", f.label(), f.eval(x));
                assert!(err < 1e-6);
            }
        }
    }
}

#[test]
fn translation_reduces_to_shift_and_of_kernel_factorizes() {
    let budget = Budget::default();
    let f = poly_gaussian();
    assert_eq!(translate(&f, 0.7, -0.2, &params(0.0), &budget).unwrap(), f.eval(0.5));
    for &k in &[0.25, 1.0, 3.0] {
        let p = params(k);
        let lambda = 1.7;
        let re = TestFunction::new("re", Decay::Compact { radius: 4.0 }, move |y| {
            dunkl_kernel(lambda, y, &DunklParams { k, d: 1 }).re
        });
        let im = TestFunction::new("im", Decay::Compact { radius: 4.0 }, move |y| {
            dunkl_kernel(lambda, y, &DunklParams { k, d: 1 }).im
        });
        for &(x, y) in &[(0.9, -0.6), (-1.4, -2.0), (2.2, 0.3)] {
            let want = dunkl_kernel(lambda, x, &p) * dunkl_kernel(lambda, y, &p);
            let got = Complex64::new(
                translate(&re, x, y, &p, &budget).unwrap(),
                translate(&im, x, y, &p, &budget).unwrap(),
            );
            assert!((got - want).norm() < 1e-12, "k={k} x={x} y={y}: {got} vs {want}");
        }
    }
}

#[test]
fn translation_acts_as_kernel_multiplier_on_transform() {
    let budget = Budget::default();
    let tol = Tolerance::new(1e-14, 1e-11);
    let p = params(0.6);
    let f = poly_gaussian();
    let x = 0.8;
    let ff = f.clone();
    let b = budget.clone();
    let shifted = TestFunction::new("shifted", Decay::Gaussian { rate: 0.3 }, move |y| {
        translate(&ff, x, y, &DunklParams { k: 0.6, d: 1 }, &b).unwrap()
    });
    for &xi in &[-1.1, 0.5, 2.0] {
        let (lhs, _) = dunkl_transform(&shifted, xi, &p, tol).unwrap();
        let rhs = dunkl_kernel(xi, x, &p) * f.known_transform(&p, xi).unwrap();
        assert!((lhs - rhs).norm() < 1e-9, "xi={xi}: {lhs} vs {rhs}");
    }
}

#[test]
fn spherical_mean_second_order_slope() {
    let budget = Budget::default();
    for &k in &[0.0, 0.5, 2.0] {
        let p = params(k);
        let f = poly_gaussian();
        for &x in &[0.0, 0.7, -1.5] {
            let lap = dunkl_laplacian_1d(&f, x, &p).unwrap();
            let r = 1e-3;
            let slope = (spherical_mean_1d(&f, x, r, &p, &budget).unwrap() - f.eval(x)) / (r * r);
            let want = lap / (2.0 * (2.0 * k + 1.0));
            assert!((slope - want).abs() < 1e-5 * (1.0 + want.abs()), "k={k} x={x}: {slope} vs {want}");
        }
    }
}

#[test]
fn heat_kernel_has_unit_mass() {
    for &k in &[0.0, 0.4, 2.0] {
        let p = params(k);
        let m = dunkl_frac::quadrature::integrate(
            |x| heat_kernel(0.3, x, &p).unwrap() * weight(x, &p),
            -12.0,
            12.0,
            Tolerance::default(),
        )
        .unwrap();
        assert!((m.value - 1.0).abs() < 1e-9, "k={k}: {}", m.value);
    }
}

#[test]
fn heat_semigroup_on_gaussian() {
    let budget = Budget::default();
    for &k in &[0.0, 0.7, 2.0] {
        let p = params(k);
        let g = gaussian().without_transform();
        for &t in &[0.05, 0.5, 2.0] {
            for &x in &[0.0, 0.6, -2.5] {
                let want = heat_closed_form(k, t, x);
                for mode in [HeatMode::Spectral, HeatMode::Translation] {
                    let got = heat_semigroup(&g, t, x, &p, mode, &budget).unwrap();
                    assert!((got.value - want).abs() < 1e-9, "{mode:?} k={k} t={t} x={x}: {} vs {want}", got.value);
                }
            }
        }
    }
}

#[test]
fn convolution_of_gaussians() {
    let budget = Budget::default();
    for &k in &[0.0, 0.5, 1.5] {
        let p = params(k);
        let g = gaussian();
        for &x in &[0.0f64, 1.0, -2.3] {
            let want = p.c_k() * 2f64.powf(-p.half_dim()) * (-x * x / 4.0).exp();
            for mode in [ConvolutionMode::Spectral, ConvolutionMode::Direct] {
                let got = convolve(&g, &g, x, &p, mode, &budget).unwrap();
                assert!((got.value - want).abs() < 1e-9, "{mode:?} k={k} x={x}: {} vs {want}", got.value);
            }
        }
    }
}

#[test]
fn convolution_with_heat_kernel_is_semigroup() {
    let budget = Budget::default();
    let p = params(0.9);
    let f = poly_gaussian();
    let h = heat_kernel_function(0.4, &p).unwrap();
    for &x in &[0.2, -1.0] {
        let a = convolve(&h, &f, x, &p, ConvolutionMode::Direct, &budget).unwrap();
        let b = heat_semigroup(&f, 0.4, x, &p, HeatMode::Spectral, &budget).unwrap();
        assert!((a.value - b.value).abs() < 1e-9, "x={x}: {} vs {}", a.value, b.value);
    }
}
