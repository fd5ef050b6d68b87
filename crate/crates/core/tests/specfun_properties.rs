use std::f64::consts::PI;

use landauer_core::specfun::*;
use proptest::prelude::*;

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}

/// `e^{-x} I_ν(x)` from the integral representation
/// `(1/π)∫₀^π e^{x cos θ} cos νθ dθ - (sin νπ / π)∫₀^∞ e^{-x cosh u - νu} du`.
fn scaled_bessel_quadrature(nu: f64, x: f64) -> f64 {
    let first = simpson(|th| (x * (th.cos() - 1.0)).exp() * (nu * th).cos(), 0.0, PI, 4000) / PI;
    let sin_nu_pi = (nu * PI).sin();
    if sin_nu_pi.abs() < 1e-15 {
        return first;
    }
    let second = simpson(|u| (-x * (u.cosh() + 1.0) - nu * u).exp(), 0.0, 30.0, 60_000);
    first - sin_nu_pi / PI * second
}

#[test]
fn brillouin_half_equals_tanh_on_grid() {
    for i in 0..=4000 {
        let x = -20.0 + 0.01 * i as f64;
        assert!((brillouin(0.5, x) - x.tanh()).abs() < 1e-12, "x = {x}");
    }
}

#[test]
fn brillouin_converges_to_langevin() {
    for s in [10.0, 25.0, 100.0, 1000.0] {
        for i in 0..=500 {
            let x = 0.1 * i as f64;
            assert!((brillouin(s, x) - langevin(x)).abs() <= 1.0 / s, "s = {s}, x = {x}");
        }
    }
}

#[test]
fn half_order_ratio_is_langevin() {
    for i in 1..=5000 {
        let x = 0.01 * i as f64;
        assert!((bessel_ratio(0.5, x).unwrap() - langevin(x)).abs() < 1e-10, "x = {x}");
    }
}

#[test]
fn half_order_bessel_closed_forms() {
    for i in 0..=1000 {
        let x = 1e-3 * 50_000f64.powf(i as f64 / 1000.0);
        let pref = (2.0 / (PI * x)).sqrt();
        let i_half = pref * x.sinh();
        let i_three_halves = pref * (x.cosh() - x.sinh() / x);
        let got = bessel_i(0.5, x, false).unwrap();
        assert!(((got - i_half) / i_half).abs() < 1e-10, "x = {x}");
        if x > 0.1 {
            // the closed form for I_{3/2} cancels badly at small x
            let got = bessel_i(1.5, x, false).unwrap();
            assert!(((got - i_three_halves) / i_three_halves).abs() < 1e-10, "x = {x}");
        }
    }
}

#[test]
fn generic_orders_match_quadrature() {
    for &nu in &[0.0, 0.3, 1.0, 1.7, 2.5, 4.0] {
        for &x in &[0.05, 0.8, 3.0, 12.0, 40.0, 160.0] {
            let oracle = scaled_bessel_quadrature(nu, x);
            let got = bessel_i(nu, x, true).unwrap();
            // quadrature carries ~1e-16 absolute error on an O(1) integrand
            let tol = 1e-9 * oracle + 1e-15;
            assert!((got - oracle).abs() < tol, "nu = {nu}, x = {x}: {got} vs {oracle}");
            let ratio_oracle = scaled_bessel_quadrature(nu + 1.0, x) / oracle;
            let ratio = bessel_ratio(nu, x).unwrap();
            if oracle > 1e-6 {
                assert!((ratio - ratio_oracle).abs() < 1e-9, "ratio nu = {nu}, x = {x}");
            }
        }
    }
}

#[test]
fn everything_finite_up_to_ten_thousand() {
    for i in 0..=2000 {
        let x = 5.0 * i as f64;
        for v in [langevin(x), brillouin(2.5, x), log_sinh_ratio(3.0, x), ln_sinhc(x)] {
            assert!(v.is_finite(), "x = {x}");
        }
        for nu in [0.0, 0.5, 1.5, 4.0, 10.0] {
            assert!(bessel_i(nu, x, true).unwrap().is_finite());
            let r = bessel_ratio(nu, x).unwrap();
            assert!((0.0..1.0).contains(&r), "nu = {nu}, x = {x}, r = {r}");
        }
    }
}

#[test]
fn ratio_large_argument() {
    let r = bessel_ratio(2.0, 1e4).unwrap();
    assert!((r - 1.0).abs() < 1e-3);
    // 1 - (ν + 1/2)/x to first order
    assert!((r - (1.0 - 2.5e-4)).abs() < 1e-7);
}

#[test]
fn log_sinh_ratio_small_argument_limit() {
    for s in [0.5, 1.0, 1.5, 7.0, 100.0] {
        let v = log_sinh_ratio(s, 1e-8);
        assert!((v - (2.0 * s + 1.0).ln()).abs() < 1e-9);
    }
}

#[test]
fn log_gamma_against_factorials() {
    let mut fact = 1.0f64;
    for k in 1..=170u32 {
        fact *= f64::from(k);
        let v = log_gamma(f64::from(k) + 1.0).unwrap();
        assert!(((v - fact.ln()) / fact.ln().max(1.0)).abs() < 1e-12, "k = {k}");
    }
}

proptest! {
    #[test]
    fn kernels_are_odd(x in -50.0f64..50.0, s in 0.5f64..40.0) {
        prop_assert_eq!(langevin(-x), -langevin(x));
        prop_assert!((brillouin(s, -x) + brillouin(s, x)).abs() < 1e-15);
    }

    #[test]
    fn kernels_in_unit_interval(x in 0.0f64..1e4, s in 0.5f64..1e3) {
        let l = langevin(x);
        let b = brillouin(s, x);
        prop_assert!((0.0..=1.0).contains(&l));
        prop_assert!((0.0..=1.0).contains(&b));
    }

    #[test]
    fn brillouin_is_monotone(x in 0.0f64..60.0, dx in 1e-3f64..1.0, two_s in 1u32..200) {
        let s = 0.5 * f64::from(two_s);
        prop_assert!(brillouin(s, x + dx) >= brillouin(s, x) - 1e-15);
    }

    #[test]
    fn ratio_recurrence(nu in 0.0f64..8.0, x in 0.1f64..300.0) {
        // I_{ν-1} - I_{ν+1} = (2ν/x) I_ν, written for ratios:
        // R_ν = 1 / (2(ν+1)/x + R_{ν+1}).
        let r0 = bessel_ratio(nu, x).unwrap();
        let r1 = bessel_ratio(nu + 1.0, x).unwrap();
        let rhs = 1.0 / (2.0 * (nu + 1.0) / x + r1);
        prop_assert!((r0 - rhs).abs() < 1e-12 * r0.max(1e-3));
    }
}
