//! Independent second routes for the quantities the library computes.

use hermite_wigner::poly::ExactPolynomial;
use hermite_wigner::quadrature::{integrate_adaptive, QuadratureRule};
use hermite_wigner::special::{
    complex_hermite_table, hermite_eval, hermite_exact, laguerre_eval, ComplexHermiteTable,
};
use hermite_wigner::wigner::{fwt_hermite_closed, fwt_quadrature, gauss_integral, PhasePoint, WindowFunction};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;

/// `d^n/dx^n exp(-x^2) = P_n(x) exp(-x^2)` with `P_{n+1} = P_n' - 2x P_n`.
fn rodrigues(n: usize) -> ExactPolynomial {
    let mut p = ExactPolynomial::constant(1);
    for _ in 0..n {
        p = p.derivative().sub(&p.shift_up().scale(&BigInt::from(2)));
    }
    if n % 2 == 1 {
        p.scale(&BigInt::from(-1))
    } else {
        p
    }
}

#[test]
fn hermite_matches_rodrigues_formula() {
    for n in 0..=12 {
        assert_eq!(hermite_exact(n), rodrigues(n), "n = {n}");
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[test]
fn hermite_matches_generating_function_expansion() {
    // coefficient of t^n / n! in exp(-t^2 + 2xt)
    for n in 0..=20 {
        let mut c = vec![BigInt::zero(); n + 1];
        for k in 0..=n / 2 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let term = factorial(n) * BigInt::from(2).pow((n - 2 * k) as u32)
                / (factorial(k) * factorial(n - 2 * k));
            c[n - 2 * k] = term * sign;
        }
        assert_eq!(hermite_exact(n), ExactPolynomial::new(c), "n = {n}");
    }
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

#[test]
fn recurrence_matches_exact_rational_evaluation() {
    let mut worst = 0.0f64;
    for n in 0..=30 {
        let poly = hermite_exact(n);
        for k in -40..=40 {
            let x = 0.25 * k as f64 + 0.013 * (k % 3) as f64;
            if x.abs() > 10.0 {
                continue;
            }
            let exact = poly.eval_exact(&rational(x)).to_f64().unwrap();
            let got = hermite_eval(n, x).unwrap();
            let rel = (got - exact).abs() / (1.0 + exact.abs());
            worst = worst.max(rel);
        }
    }
    assert!(worst <= 1e-12, "worst relative error {worst:e}");
}

/// `sum_k (-1)^k binom(n + alpha, n - k) x^k / k!` in exact rationals.
fn laguerre_exact(n: usize, alpha: &BigRational, x: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut xk = BigRational::one();
    for k in 0..=n {
        let mut binom = BigRational::one();
        for i in 1..=(n - k) {
            let i = BigRational::from_integer(BigInt::from(i));
            binom = binom * (BigRational::from_integer(BigInt::from(k)) + alpha + &i) / i;
        }
        let term = binom * &xk / BigRational::from_integer(factorial(k));
        sum = if k % 2 == 0 { sum + term } else { sum - term };
        xk = xk * x;
    }
    sum
}

#[test]
fn laguerre_matches_explicit_sum() {
    for &alpha in &[0.0, 0.5, 1.0, 3.0, 7.0] {
        let a = rational(alpha);
        for n in 0..=20 {
            for &x in &[0.0, 0.125, 1.0, 2.5, 6.0, 11.75] {
                let exact = laguerre_exact(n, &a, &rational(x)).to_f64().unwrap();
                let got = laguerre_eval(n, alpha, x);
                assert!(
                    (got - exact).abs() <= 1e-12 * (1.0 + exact.abs()),
                    "L_{n}^({alpha})({x}): {got} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn complex_table_routes_agree() {
    for m in 0..=10 {
        for n in 0..=10 {
            let a = ComplexHermiteTable::from_generating_function(m, n);
            let b = ComplexHermiteTable::by_recurrence(m, n);
            assert_eq!(a, b, "({m},{n})");
            assert_eq!(complex_hermite_table(m, n), a);
        }
    }
}

#[test]
fn introduction_form_of_the_transform() {
    // (2 pi)^{-1/2} int exp(i (x + p/2) q) f(x + p) conj(g(x)) dx
    let rule = QuadratureRule::gauss_hermite(120).unwrap();
    for (m, n) in [(0, 0), (1, 0), (2, 3), (4, 1)] {
        let f = WindowFunction::hermite(m);
        let g = WindowFunction::hermite(n);
        for (p, q) in [(0.0, 0.0), (0.7, -1.3), (-2.0, 0.5), (1.5, 2.0)] {
            let direct = integrate_adaptive(
                |x| Complex64::from_polar(1.0, (x + 0.5 * p) * q) * f.eval(x + p) * g.eval(x).conj(),
                -30.0,
                30.0,
                1e-13,
            ) / (2.0 * PI).sqrt();
            let pt = PhasePoint::new(p, q).unwrap();
            let via_rule = fwt_quadrature(&f, &g, pt, &rule);
            let closed = fwt_hermite_closed(m, n, pt);
            let scale = 1.0 + closed.norm();
            assert!((direct - closed).norm() <= 1e-10 * scale, "({m},{n}) at ({p},{q})");
            assert!((via_rule - closed).norm() <= 1e-12 * scale, "({m},{n}) at ({p},{q})");
        }
    }
}

#[test]
fn gauss_integral_against_cosine_quadrature() {
    let closed = gauss_integral(2.0, Complex64::new(0.0, 1.0)).unwrap();
    let quad = integrate_adaptive(|y| Complex64::new((-2.0 * y * y).exp() * y.cos(), 0.0), -20.0, 20.0, 1e-14);
    let expected = (PI / 2.0).sqrt() * (-0.125f64).exp();
    assert!((closed.re - expected).abs() < 1e-15 && closed.im.abs() < 1e-15);
    assert!((quad - closed).norm() < 1e-13);

    let closed = gauss_integral(1.0, Complex64::new(2.0, 0.0)).unwrap();
    let quad = integrate_adaptive(|y| Complex64::new((-y * y + 2.0 * y).exp(), 0.0), -20.0, 20.0, 1e-14);
    assert!((closed.re - PI.sqrt() * 1f64.exp()).abs() < 1e-14);
    assert!((quad - closed).norm() < 1e-12);
}
