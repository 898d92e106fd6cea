use hermite_wigner::identity::{
    check_genfn_complex, check_genfn_product, check_genfn_real, check_mehler, check_theorem_hvh,
    SeriesTruncation,
};
use hermite_wigner::quadrature::{default_rule_order, QuadratureRule};
use hermite_wigner::special::{
    complex_hermite_eval, complex_hermite_table, complex_hermite_via_laguerre, hermite_eval, hermite_exact,
    hermite_fn, hermite_norm_sq,
};
use hermite_wigner::wigner::{
    cross_window, fourier_transform_quadrature, fwt_hermite_closed, fwt_quadrature, PhasePoint, WindowFunction,
};
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use std::f64::consts::PI;

fn disk(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, -PI..PI).prop_map(move |(r, t)| Complex64::from_polar(radius * r.sqrt(), t))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recurrence_and_laguerre_routes_agree(m in 0usize..=20, n in 0usize..=20, z in disk(5.0)) {
        let a = complex_hermite_eval(m, n, z);
        let b = complex_hermite_via_laguerre(m, n, z);
        prop_assert!(close(a, b, 1e-10), "({m},{n}) at {z}: {a} vs {b}");
    }

    #[test]
    fn swapping_indices_conjugates(m in 0usize..=20, n in 0usize..=20, z in disk(5.0)) {
        let a = complex_hermite_eval(m, n, z);
        let b = complex_hermite_eval(n, m, z);
        prop_assert!(close(a, b.conj(), 1e-14));
    }

    #[test]
    fn hermite_parity(n in 0usize..=60, x in -10.0..10.0f64) {
        let a = hermite_eval(n, x).unwrap();
        let b = hermite_eval(n, -x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(a, sign * b);
    }

    #[test]
    fn pointwise_bound(m in 0usize..=12, n in 0usize..=12, p in -6.0..6.0f64, q in -6.0..6.0f64) {
        let pt = PhasePoint::new(p, q).unwrap();
        let rule = QuadratureRule::gauss_hermite(default_rule_order(m + n, q)).unwrap();
        let v = fwt_quadrature(&WindowFunction::hermite(m), &WindowFunction::hermite(n), pt, &rule);
        let bound = (hermite_norm_sq(m).unwrap() * hermite_norm_sq(n).unwrap()).sqrt() / (2.0 * PI).sqrt();
        prop_assert!(v.norm() <= bound + 1e-8, "{} > {bound}", v.norm());
    }

    #[test]
    fn transform_factors_through_cross_window(
        m in 0usize..=10, n in 0usize..=10, p in -4.0..4.0f64, q in -4.0..4.0f64, custom in any::<bool>()
    ) {
        let pt = PhasePoint::new(p, q).unwrap();
        let rule = QuadratureRule::gauss_hermite(96).unwrap();
        let (f, g) = if custom {
            let f = WindowFunction::custom("f", 0.5, move |y| Complex64::new(hermite_fn(m, false, y), 0.3 * y * (-0.5 * y * y).exp())).unwrap();
            let g = WindowFunction::custom("g", 0.7, move |y| Complex64::from_polar((-0.7 * y * y).exp(), y)).unwrap();
            (f, g)
        } else {
            (WindowFunction::hermite(m), WindowFunction::hermite(n))
        };
        let direct = fwt_quadrature(&f, &g, pt, &rule);
        let factored = fourier_transform_quadrature(&cross_window(&f, &g, p), -q, &rule);
        prop_assert!(close(direct, factored, 1e-12), "{direct} vs {factored}");
    }

    #[test]
    fn theorem_holds_off_grid(m in 0usize..=12, n in 0usize..=12, p in -3.0..3.0f64, q in -3.0..3.0f64) {
        let pt = PhasePoint::new(p, q).unwrap();
        let rule = QuadratureRule::gauss_hermite(default_rule_order(m + n, q)).unwrap();
        let c = check_theorem_hvh(m, n, pt, &rule);
        prop_assert!(c.passed, "{c:?}");
    }

    #[test]
    fn truncation_monotonicity(
        t in -0.9..0.9f64, x in -2.0..2.0f64, short in 5usize..60, extra in 1usize..60
    ) {
        let a = check_genfn_real(t, x, SeriesTruncation::new(short).unwrap());
        let b = check_genfn_real(t, x, SeriesTruncation::new(short + extra).unwrap());
        let tail = a.truncation.unwrap().tail_estimate;
        prop_assert!(b.abs_err <= a.abs_err + tail + 1e-15 * (1.0 + a.rhs.norm()));
    }

    #[test]
    fn truncation_monotonicity_double_series(
        u in -0.5..0.5f64, v in -0.5..0.5f64, y in -1.0..1.0f64, p in -2.0..2.0f64,
        short in 5usize..30, extra in 1usize..30
    ) {
        let a = check_genfn_product(u, v, y, p, SeriesTruncation::new(short).unwrap());
        let b = check_genfn_product(u, v, y, p, SeriesTruncation::new(short + extra).unwrap());
        let tail = a.truncation.unwrap().tail_estimate;
        prop_assert!(b.abs_err <= a.abs_err + tail + 1e-15 * (1.0 + a.rhs.norm()));
    }

    #[test]
    fn mehler_truncation_monotonicity(
        x in -2.0..2.0f64, y in -2.0..2.0f64, lam in -0.8..0.8f64, short in 5usize..80, extra in 1usize..80
    ) {
        let a = check_mehler(x, y, lam, SeriesTruncation::new(short).unwrap()).unwrap();
        let b = check_mehler(x, y, lam, SeriesTruncation::new(short + extra).unwrap()).unwrap();
        let tail = a.truncation.unwrap().tail_estimate;
        prop_assert!(b.abs_err <= a.abs_err + tail + 1e-15 * (1.0 + a.rhs.norm()));
    }
}

#[test]
fn table_degree_structure() {
    for m in 0..=12 {
        for n in 0..=12 {
            let t = complex_hermite_table(m, n);
            assert_eq!(t.len(), m.min(n) + 1, "({m},{n})");
            for (&(j, k), c) in t.iter() {
                assert_eq!(m - j, n - k);
                assert!(!c.is_zero());
            }
            assert_eq!(t.coefficient(m, n), 1.into());
        }
    }
}

#[test]
fn exact_hermite_coefficient_structure() {
    for n in 0..=40 {
        let h = hermite_exact(n);
        assert_eq!(h.degree(), n);
        assert_eq!(h.leading_coefficient().unwrap(), &num_bigint::BigInt::from(2).pow(n as u32));
        for (k, c) in h.coefficients().iter().enumerate() {
            if k % 2 != n % 2 {
                assert!(c.is_zero(), "H_{n} has x^{k}");
            }
        }
    }
}

#[test]
fn normalized_hermite_functions_are_orthonormal() {
    let rule = QuadratureRule::gauss_hermite(40).unwrap();
    for m in 0..=12 {
        for n in 0..=12 {
            // e_m e_n = exp(-x^2) H_m H_n / norms, so the Gaussian weight absorbs the envelope
            let v = rule.integrate_gaussian(|x| hermite_eval(m, x).unwrap() * hermite_eval(n, x).unwrap())
                / (hermite_norm_sq(m).unwrap() * hermite_norm_sq(n).unwrap()).sqrt();
            let on_line = rule.integrate_line(1.0, |x| {
                Complex64::new(hermite_fn(m, true, x) * hermite_fn(n, true, x), 0.0)
            });
            let delta = if m == n { 1.0 } else { 0.0 };
            assert!((v - delta).abs() <= 1e-9, "({m},{n}): {v}");
            assert!((on_line.re - delta).abs() <= 1e-9, "({m},{n}): {on_line}");
        }
    }
}

fn gaussian_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    // Gamma((k+1)/2) = sqrt(pi) (k-1)!! / 2^{k/2}
    let mut v = PI.sqrt();
    for j in (1..k).step_by(2) {
        v *= j as f64 / 2.0;
    }
    v
}

#[test]
fn gauss_hermite_exactness() {
    for order in [1, 2, 3, 5, 8, 13, 21, 34, 55, 80] {
        let rule = QuadratureRule::gauss_hermite(order).unwrap();
        for k in 0..2 * order {
            let got = rule.integrate_gaussian(|y| y.powi(k as i32));
            let scale = rule.integrate_gaussian(|y| y.abs().powi(k as i32));
            let want = gaussian_moment(k);
            assert!((got - want).abs() <= 1e-13 * scale, "order {order}, k = {k}: {got} vs {want}");
        }
        let w = rule.weights();
        assert!(w.iter().all(|&x| x > 0.0));
        assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]));
        assert!((w.iter().sum::<f64>() - PI.sqrt()).abs() <= 1e-13);
    }
}

#[test]
fn degenerate_indices_are_total() {
    let z = Complex64::new(0.8, -1.1);
    let rule = QuadratureRule::gauss_hermite(64).unwrap();
    for (m, n) in [(0, 0), (0, 5), (5, 0)] {
        assert!(close(complex_hermite_eval(m, n, z), complex_hermite_via_laguerre(m, n, z), 1e-13));
        let pt = PhasePoint::new(0.8, -1.1).unwrap();
        assert!(check_theorem_hvh(m, n, pt, &rule).passed);
    }
    assert_eq!(complex_hermite_eval(0, 0, z), Complex64::new(1.0, 0.0));
    assert_eq!(hermite_eval(0, 3.0).unwrap(), 1.0);
    let gc = check_genfn_complex(Complex64::new(0.2, 0.0), Complex64::zero(), z, SeriesTruncation::new(1).unwrap());
    assert!((gc.lhs - Complex64::new(1.0, 0.0)).norm() == 0.0);
}

#[test]
fn order_120_rule_reaches_1e10_on_normalized_windows() {
    // |V(h_m,h_n)| reaches 1e16 at m = n = 15, so the absolute bound is read on e_m, e_n
    let rule = QuadratureRule::gauss_hermite(120).unwrap();
    let mut worst: (f64, usize, usize, f64, f64) = (0.0, 0, 0, 0.0, 0.0);
    for m in 0..=30 {
        for n in 0..=30 - m {
            let scale = (hermite_norm_sq(m).unwrap() * hermite_norm_sq(n).unwrap()).sqrt();
            for p in (-8..=8).step_by(2) {
                for q in (-8..=8).step_by(2) {
                    let pt = PhasePoint::new(f64::from(p), f64::from(q)).unwrap();
                    let (f, g) = (WindowFunction::hermite_normalized(m), WindowFunction::hermite_normalized(n));
                    let e = (fwt_quadrature(&f, &g, pt, &rule) - fwt_hermite_closed(m, n, pt) / scale).norm();
                    if e > worst.0 {
                        worst = (e, m, n, f64::from(p), f64::from(q));
                    }
                }
            }
        }
    }
    assert!(worst.0 <= 1e-10, "{worst:?}");
}

#[test]
fn weights_positive_until_underflow() {
    for order in [100, 200, 300, 360] {
        let rule = QuadratureRule::gauss_hermite(order).unwrap();
        assert!(rule.weights().iter().all(|&w| w > 0.0), "order {order}");
        assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]));
    }
    // the outermost weights of large rules are below the smallest subnormal
    let rule = QuadratureRule::gauss_hermite(512).unwrap();
    assert!(rule.weights().iter().all(|&w| w >= 0.0));
    assert!(rule.weights().iter().any(|&w| w == 0.0));
    assert!(rule.line_weights().iter().all(|&w| w > 0.0 && w.is_finite()));
}
