//! Named, parameterized identity checks comparing independent computation
//! routes (truncated series, closed forms, quadrature).
//!
//! Every check produces an [`IdentityCheck`] with
//! `passed <=> abs_err <= tol * (1 + max(|lhs|, |rhs|))`, so identities whose
//! value is zero fall back to an absolute tolerance.

mod suites;

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dd::{Dd, DdComplex};
use crate::quadrature::QuadratureRule;
use crate::special::{
    complex_hermite_diagonal_normalized, complex_hermite_eval, complex_hermite_grid_dd, hermite_eval, hermite_eval_log, hermite_fn,
    laguerre_eval, ComplexHermiteGrid,
};
use crate::wigner::{
    fwt_hermite_closed, fwt_quadrature, hermite_product_integral, PhasePoint, TensorRule,
    WindowFunction,
};
use crate::{Error, Result};

pub use suites::{list_suites, random_disk, run_suite, SuiteInfo, SuiteParams, DEFAULT_SEED, SUITES};

/// Pure-series identities.
pub const TOL_SERIES: f64 = 1e-12;
/// Quadrature against a closed form.
pub const TOL_QUADRATURE: f64 = 1e-9;
/// Diagonal generating function series.
pub const TOL_DIAG: f64 = 1e-10;
/// Two-dimensional quadrature.
pub const TOL_QUADRATURE_2D: f64 = 1e-7;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// A named parameter value.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Text(v) => f.write_str(v),
        }
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

/// Ordered parameter list; order is the order of construction.
pub type Params = Vec<(String, ParamValue)>;

macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {
        vec![$(($k.to_string(), ParamValue::from($v))),*]
    };
}
pub(crate) use params;

/// Truncation order `N` of an infinite series (terms `0..N` per index) and,
/// after evaluation, the magnitude of the last included term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesTruncation {
    pub order: usize,
    pub tail_estimate: f64,
}

impl SeriesTruncation {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("series truncation order must be at least 1".into()));
        }
        Ok(SeriesTruncation {
            order,
            tail_estimate: f64::NAN,
        })
    }

    fn evaluated(self, tail_estimate: f64) -> Self {
        SeriesTruncation {
            tail_estimate,
            ..self
        }
    }
}

/// Terms needed for a geometric tail in `ratio` to drop below `1e-17`,
/// at least 40 and at most 1000.
pub fn default_series_order(ratio: f64) -> usize {
    let r = ratio.abs();
    if r == 0.0 {
        return 40;
    }
    let n = (1e-17f64.ln() / r.ln()).ceil();
    if n.is_finite() {
        (n as usize).clamp(40, 1000)
    } else {
        1000
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub id: String,
    pub params: Params,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub passed: bool,
    pub truncation: Option<SeriesTruncation>,
}

impl IdentityCheck {
    pub fn new(id: &str, params: Params, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
        let passed = abs_err <= tol * (1.0 + scale);
        IdentityCheck {
            id: id.to_string(),
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            passed,
            truncation: None,
        }
    }

    pub fn real(id: &str, params: Params, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(id, params, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), tol)
    }

    fn with_truncation(mut self, t: SeriesTruncation) -> Self {
        self.truncation = Some(t);
        self
    }

    pub fn param(&self, key: &str) -> Option<&ParamValue> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `H_m(x) t^m / m!` for `m < order`.
fn real_generating_terms(x: f64, t: f64, order: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(order);
    let mut coef = 1.0;
    let mut ln_coef = 0.0;
    for m in 0..order {
        if m > 0 {
            coef *= t / m as f64;
            ln_coef += t.abs().ln() - (m as f64).ln();
        }
        if m > 0 && t == 0.0 {
            out.push(0.0);
            continue;
        }
        let direct = hermite_eval(m, x).ok().filter(|_| coef.abs() >= f64::MIN_POSITIVE);
        let term = match direct {
            Some(h) => h * coef,
            None => {
                let (s, l) = hermite_eval_log(m, x);
                let sign = if t < 0.0 && m % 2 == 1 { -s } else { s };
                sign * (l + ln_coef).exp()
            }
        };
        out.push(term);
    }
    out
}

/// `sum H_m(x) t^m / m! = exp(-t^2 + 2 x t)`
pub fn check_genfn_real(t: f64, x: f64, trunc: SeriesTruncation) -> IdentityCheck {
    let terms = real_generating_terms(x, t, trunc.order);
    let lhs: f64 = terms.iter().sum();
    let rhs = (-t * t + 2.0 * x * t).exp();
    let tail = terms.last().map_or(0.0, |v| v.abs());
    IdentityCheck::real("genfn-real", params!("t" => t, "x" => x), lhs, rhs, TOL_SERIES)
        .with_truncation(trunc.evaluated(tail))
}

/// `sum H_m(y+p/2) H_n(y-p/2) u^m v^n / (m! n!) = exp(-(u^2+v^2) + 2y(u+v) + p(u-v))`
pub fn check_genfn_product(u: f64, v: f64, y: f64, p: f64, trunc: SeriesTruncation) -> IdentityCheck {
    let a = real_generating_terms(y + 0.5 * p, u, trunc.order);
    let b = real_generating_terms(y - 0.5 * p, v, trunc.order);
    let mut lhs = 0.0;
    for am in &a {
        for bn in &b {
            lhs += am * bn;
        }
    }
    let last = trunc.order - 1;
    let tail = a
        .iter()
        .map(|x| (x * b[last]).abs())
        .chain(b.iter().map(|x| (x * a[last]).abs()))
        .fold(0.0, f64::max);
    let rhs = (-(u * u + v * v) + 2.0 * y * (u + v) + p * (u - v)).exp();
    IdentityCheck::real(
        "genfn-product",
        params!("u" => u, "v" => v, "y" => y, "p" => p),
        lhs,
        rhs,
        TOL_SERIES,
    )
    .with_truncation(trunc.evaluated(tail))
}

/// `w^m / sqrt(m!)` for `m < order`.
fn scaled_powers(w: Complex64, order: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(order);
    let mut cur = c(1.0);
    for m in 0..order {
        if m > 0 {
            cur = cur * w / (m as f64).sqrt();
        }
        out.push(cur);
    }
    out
}

/// `sum H_{m,n}(z, zbar) u^m v^n / (m! n!) = exp(-uv + zu + zbar v)`
pub fn check_genfn_complex(u: Complex64, v: Complex64, z: Complex64, trunc: SeriesTruncation) -> IdentityCheck {
    let n = trunc.order;
    let grid = ComplexHermiteGrid::normalized(n - 1, n - 1, z);
    let a = scaled_powers(u, n);
    let b = scaled_powers(v, n);
    let mut lhs = c(0.0);
    let mut tail: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let t = grid.get(i, j) * a[i] * b[j];
            lhs += t;
            if i == n - 1 || j == n - 1 {
                tail = tail.max(t.norm());
            }
        }
    }
    let rhs = (-u * v + z * u + z.conj() * v).exp();
    IdentityCheck::new(
        "genfn-complex",
        params!(
            "u_re" => u.re, "u_im" => u.im,
            "v_re" => v.re, "v_im" => v.im,
            "z_re" => z.re, "z_im" => z.im,
        ),
        lhs,
        rhs,
        TOL_SERIES,
    )
    .with_truncation(trunc.evaluated(tail))
}

/// `g(x,y|lam) = (1-lam^2)^{-1/2} exp(-(1+lam^2)/(2(1-lam^2)) (x^2+y^2) + 2 lam x y / (1-lam^2))`
pub fn mehler_kernel(x: f64, y: f64, lam: f64) -> Result<f64> {
    if !(lam.abs() < 1.0) {
        return Err(Error::Domain(format!("Mehler kernel needs |lambda| < 1, got {lam}")));
    }
    let d = 1.0 - lam * lam;
    let e = -(1.0 + lam * lam) / (2.0 * d) * (x * x + y * y) + 2.0 * lam * x * y / d;
    Ok(e.exp() / d.sqrt())
}

/// `sum lam^m / (2^m m!) h_m(x) h_m(y) = g(x,y|lam)`; the series runs over
/// `lam^m sqrt(pi) e_m(x) e_m(y)`, the same terms without the `2^m m!` overflow.
pub fn check_mehler(x: f64, y: f64, lam: f64, trunc: SeriesTruncation) -> Result<IdentityCheck> {
    let rhs = mehler_kernel(x, y, lam)?;
    let mut lhs = 0.0;
    let mut pow = 1.0;
    let mut last = 0.0;
    for m in 0..trunc.order {
        if m > 0 {
            pow *= lam;
        }
        last = pow * SQRT_PI * hermite_fn(m, true, x) * hermite_fn(m, true, y);
        lhs += last;
    }
    Ok(IdentityCheck::real("mehler", params!("x" => x, "y" => y, "lambda" => lam), lhs, rhs, TOL_SERIES)
        .with_truncation(trunc.evaluated(last.abs())))
}

/// `V(h_m, h_n)(p,q)` by quadrature against the closed complex-Hermite form.
pub fn check_theorem_hvh(m: usize, n: usize, pt: PhasePoint, rule: &QuadratureRule) -> IdentityCheck {
    let lhs = fwt_quadrature(&WindowFunction::hermite(m), &WindowFunction::hermite(n), pt, rule);
    let rhs = fwt_hermite_closed(m, n, pt);
    IdentityCheck::new("thm-hVH", params!("m" => m, "n" => n, "p" => pt.p, "q" => pt.q), lhs, rhs, TOL_QUADRATURE)
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `int H_m H_n exp(-y^2 - i t y) dy = (-1)^n sqrt(pi) sqrt(2)^{m+n} exp(-t^2/4) H_{m,n}(-it/sqrt 2, it/sqrt 2)`
pub fn check_corollary_p0(m: usize, n: usize, t: f64, rule: &QuadratureRule) -> IdentityCheck {
    let lhs = hermite_product_integral(m, 0.0, n, 0.0, -t, rule);
    let pref = sign(n) * SQRT_PI * SQRT_2.powi((m + n) as i32) * (-0.25 * t * t).exp();
    let rhs = complex_hermite_eval(m, n, Complex64::new(0.0, -t / SQRT_2)) * pref;
    IdentityCheck::new("cor-fhnhm", params!("m" => m, "n" => n, "t" => t), lhs, rhs, TOL_QUADRATURE)
}

/// `int H_m(y+t/2) H_n(y-t/2) exp(-y^2) dy = (-1)^n sqrt(pi) sqrt(2)^{m+n} H_{m,n}(t/sqrt 2, t/sqrt 2)`
pub fn check_corollary_q0(m: usize, n: usize, t: f64, rule: &QuadratureRule) -> IdentityCheck {
    let lhs = hermite_product_integral(m, 0.5 * t, n, -0.5 * t, 0.0, rule);
    let pref = sign(n) * SQRT_PI * SQRT_2.powi((m + n) as i32);
    let rhs = complex_hermite_eval(m, n, c(t / SQRT_2)) * pref;
    IdentityCheck::new("cor-inthnhm", params!("m" => m, "n" => n, "t" => t), lhs, rhs, TOL_QUADRATURE)
}

/// `int H_m H_n exp(-y^2) dy = sqrt(pi) 2^m m! delta_{mn}`, the `t = 0` case of
/// the `q = 0` corollary.
pub fn check_remark_orthogonality(m: usize, n: usize, rule: &QuadratureRule) -> Result<IdentityCheck> {
    let lhs = hermite_product_integral(m, 0.0, n, 0.0, 0.0, rule);
    let rhs = if m == n { crate::special::hermite_norm_sq(m)? } else { 0.0 };
    Ok(IdentityCheck::new("remark-orthogonality", params!("m" => m, "n" => n), lhs, c(rhs), 1e-10))
}

/// `lam^m H_{m,m}(z) / m!` for `m < order`.
fn diagonal_terms(z: Complex64, lam: f64, order: usize) -> Vec<Complex64> {
    let mut pow = 1.0;
    complex_hermite_diagonal_normalized(order, z)
        .into_iter()
        .enumerate()
        .map(|(m, d)| {
            if m > 0 {
                pow *= lam;
            }
            d * pow
        })
        .collect()
}

fn diag_domain(lam: f64) -> Result<()> {
    if lam > 0.0 && lam < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("diagonal generating function needs 0 < lambda < 1, got {lam}")))
    }
}

/// `sum lam^m / m! H_{m,m}(z, zbar) = exp(lam |z|^2 / (1+lam)) / (1+lam)`
pub fn check_diag_generating(z: Complex64, lam: f64, trunc: SeriesTruncation) -> Result<IdentityCheck> {
    diag_domain(lam)?;
    let terms = diagonal_terms(z, lam, trunc.order);
    let lhs: Complex64 = terms.iter().sum();
    let rhs = (lam * z.norm_sqr() / (1.0 + lam)).exp() / (1.0 + lam);
    let tail = terms.last().map_or(0.0, |t| t.norm());
    Ok(IdentityCheck::new(
        "gen-mehler-diag",
        params!("lambda" => lam, "z_re" => z.re, "z_im" => z.im),
        lhs,
        c(rhs),
        TOL_DIAG,
    )
    .with_truncation(trunc.evaluated(tail)))
}

/// `H_{m,m}(z, zbar) = (-1)^m sqrt(2) 2^{-m} exp(|z|^2/2) V(h_m,h_m)(sqrt2 p, sqrt2 q)`, `z = p + iq`.
pub fn check_diag_hvh1(m: usize, z: Complex64, rule: &QuadratureRule) -> IdentityCheck {
    let lhs = complex_hermite_eval(m, m, z);
    let h = WindowFunction::hermite(m);
    let v = fwt_quadrature(&h, &h, PhasePoint { p: SQRT_2 * z.re, q: SQRT_2 * z.im }, rule);
    let rhs = v * (sign(m) * SQRT_2 * 0.5f64.powi(m as i32) * (0.5 * z.norm_sqr()).exp());
    IdentityCheck::new("gen-mehler-diag-hvh1", params!("m" => m, "z_re" => z.re, "z_im" => z.im), lhs, rhs, TOL_QUADRATURE)
}

/// The diagonal series against
/// `exp(|z|^2/2) / sqrt(pi) int exp(i sqrt2 q y) g(y + p/sqrt2, y - p/sqrt2 | -lam) dy`.
pub fn check_diag_hvh2(
    z: Complex64,
    lam: f64,
    trunc: SeriesTruncation,
    rule: &QuadratureRule,
) -> Result<IdentityCheck> {
    diag_domain(lam)?;
    let terms = diagonal_terms(z, lam, trunc.order);
    let lhs: Complex64 = terms.iter().sum();
    let (p, q) = (z.re, z.im);
    let alpha = (1.0 + lam) / (1.0 - lam);
    let s = p / SQRT_2;
    let integral = rule.integrate_line(alpha, |y| {
        let g = mehler_kernel(y + s, y - s, -lam).unwrap_or(f64::NAN);
        Complex64::from_polar(g, SQRT_2 * q * y)
    });
    let rhs = integral * ((0.5 * z.norm_sqr()).exp() / SQRT_PI);
    let tail = terms.last().map_or(0.0, |t| t.norm());
    Ok(IdentityCheck::new(
        "gen-mehler-diag-hvh2",
        params!("lambda" => lam, "z_re" => z.re, "z_im" => z.im),
        lhs,
        rhs,
        TOL_QUADRATURE,
    )
    .with_truncation(trunc.evaluated(tail)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WongVariant {
    /// `V(e_{j+k}, e_j)`
    Raise,
    /// `V(e_j, e_{j+k})`
    Lower,
}

impl WongVariant {
    pub fn name(self) -> &'static str {
        match self {
            WongVariant::Raise => "raise",
            WongVariant::Lower => "lower",
        }
    }
}

/// Normalized transforms against
/// `(j! / (2 pi 2^k (j+k)!))^{1/2} z^k L_j^(k)(|z|^2/2) exp(-|z|^2/4)` and its
/// conjugate-power partner with sign `(-1)^k`, `z = p + iq`.
pub fn check_wong_laguerre(
    j: usize,
    k: usize,
    pt: PhasePoint,
    variant: WongVariant,
    rule: &QuadratureRule,
) -> IdentityCheck {
    let hi = WindowFunction::hermite_normalized(j + k);
    let lo = WindowFunction::hermite_normalized(j);
    let z = pt.z();
    let ratio: f64 = (j + 1..=j + k).map(|i| 1.0 / i as f64).product();
    let amp = (ratio / (2.0 * PI * 2f64.powi(k as i32))).sqrt()
        * laguerre_eval(j, k as f64, 0.5 * z.norm_sqr())
        * (-0.25 * z.norm_sqr()).exp();
    let (lhs, rhs) = match variant {
        WongVariant::Raise => (fwt_quadrature(&hi, &lo, pt, rule), z.powu(k as u32) * amp),
        WongVariant::Lower => (fwt_quadrature(&lo, &hi, pt, rule), z.conj().powu(k as u32) * (amp * sign(k))),
    };
    IdentityCheck::new(
        "wong-laguerre",
        params!("j" => j, "k" => k, "p" => pt.p, "q" => pt.q, "variant" => variant.name()),
        lhs,
        rhs,
        TOL_QUADRATURE,
    )
}

/// Gram matrix `int int H_a conj(H_b) exp(-x^2 - y^2) dx dy` over all index
/// pairs `a = (m, n)`, `m, n <= max_index`; entry `[a * W + b]` with
/// `a = m (max_index + 1) + n`, `W = (max_index + 1)^2`. The Gaussian weight
/// is the rules' own, so `rule2d.decay` is not consulted.
pub fn complex_hermite_gram(max_index: usize, rule2d: &TensorRule) -> Vec<Complex64> {
    let w = (max_index + 1) * (max_index + 1);
    let xs = rule2d.p_rule.gaussian_pairs_dd();
    let ys = rule2d.q_rule.gaussian_pairs_dd();
    let nodes: Vec<(Dd, Dd, Dd)> = xs
        .iter()
        .flat_map(|&(x, wx)| ys.iter().map(move |&(y, wy)| (x, y, wx * wy)))
        .filter(|(_, _, wt)| wt.hi != 0.0)
        .collect();
    let acc = nodes
        .par_iter()
        .fold(
            || vec![DdComplex::ZERO; w * w],
            |mut acc, &(x, y, wt)| {
                let grid = complex_hermite_grid_dd(max_index, max_index, DdComplex::new(x, y));
                for a in 0..w {
                    let left = grid[a].scale(wt);
                    for b in 0..w {
                        acc[a * w + b] += left * grid[b].conj();
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![DdComplex::ZERO; w * w],
            |mut l, r| {
                for (a, b) in l.iter_mut().zip(r) {
                    *a += b;
                }
                l
            },
        );
    acc.into_iter().map(DdComplex::to_c64).collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Off-diagonal pairs compare against 0 (`orthogonality`); diagonal pairs
/// compare against the candidate norm `pi m! n!` (`orthogonality-norms`).
pub fn check_complex_hermite_orthogonality(
    m: usize,
    n: usize,
    m2: usize,
    n2: usize,
    rule2d: &TensorRule,
) -> IdentityCheck {
    let max = m.max(n).max(m2).max(n2);
    let gram = complex_hermite_gram(max, rule2d);
    orthogonality_from_gram(&gram, max, (m, n), (m2, n2), None)
}

pub(crate) fn orthogonality_from_gram(
    gram: &[Complex64],
    max_index: usize,
    (m, n): (usize, usize),
    (m2, n2): (usize, usize),
    tol: Option<f64>,
) -> IdentityCheck {
    let side = max_index + 1;
    let w = side * side;
    let lhs = gram[(m * side + n) * w + m2 * side + n2];
    let p = params!("m" => m, "n" => n, "m2" => m2, "n2" => n2);
    if (m, n) == (m2, n2) {
        let rhs = PI * factorial(m) * factorial(n);
        IdentityCheck::new("orthogonality-norms", p, lhs, c(rhs), tol.unwrap_or(TOL_QUADRATURE_2D))
    } else {
        IdentityCheck::new("orthogonality", p, lhs, c(0.0), tol.unwrap_or(1e-8))
    }
}
