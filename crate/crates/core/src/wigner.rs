//! One-dimensional Fourier-Wigner transform
//!
//! ```text
//! V(f,g)(p,q) = (2 pi)^{-1/2} int exp(i y q) f(y + p/2) conj(g(y - p/2)) dy
//! ```
//!
//! and its supporting pieces: the cross window `K_{f,g}(y|p)`, the Fourier
//! transform `F(f)(xi) = (2 pi)^{-1/2} int exp(-i y xi) f(y) dy` (so that
//! `V(f,g)(p,q) = F(K_{f,g}(.|p))(-q)`), the Gauss integral, and the Moyal
//! inner product on the phase plane.
//!
//! For Hermite windows the Gaussian envelope is factored out analytically:
//! `h_m(y + p/2) h_n(y - p/2) = exp(-y^2 - p^2/4) H_m(y + p/2) H_n(y - p/2)`, so
//! a Gauss-Hermite rule sees a polynomial times `exp(i y q)` and its exactness
//! degree controls the error. Those sums are accumulated in double-double
//! arithmetic because the terms reach `||h_m|| ||h_n||` while the transform
//! can vanish. Other windows go through the rescaled rule in plain `f64`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::{Dd, DdComplex};
use crate::quadrature::{default_rule_order, QuadratureRule};
use crate::special::{
    complex_hermite_eval, hermite_eval_dd, hermite_fn, hermite_norm_sq, hermite_table_dd,
};
use crate::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// A point `(p, q)` of the phase plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub p: f64,
    pub q: f64,
}

impl PhasePoint {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if p.is_finite() && q.is_finite() {
            Ok(PhasePoint { p, q })
        } else {
            Err(Error::Domain(format!("phase point ({p}, {q}) is not finite")))
        }
    }

    /// `z = p + i q`
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }
}

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum WindowKind {
    Hermite { n: usize, normalized: bool },
    Custom(Evaluator),
    Cross {
        f: Arc<WindowFunction>,
        g: Arc<WindowFunction>,
        p: f64,
    },
}

/// A complex-valued function on the line with declared Gaussian decay:
/// `|f(y)| <= M exp(-decay y^2)`.
#[derive(Clone)]
pub struct WindowFunction {
    label: String,
    decay: f64,
    kind: WindowKind,
}

impl fmt::Debug for WindowFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WindowFunction")
            .field("label", &self.label)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

/// Largest Hermite index handled by the factored double-double route.
const STRUCTURED_MAX_DEGREE: usize = 150;

impl WindowFunction {
    /// `h_n(y) = exp(-y^2/2) H_n(y)`
    pub fn hermite(n: usize) -> Self {
        WindowFunction {
            label: format!("h_{n}"),
            decay: 0.5,
            kind: WindowKind::Hermite {
                n,
                normalized: false,
            },
        }
    }

    /// `e_n = h_n / ||h_n||`
    pub fn hermite_normalized(n: usize) -> Self {
        WindowFunction {
            label: format!("e_{n}"),
            decay: 0.5,
            kind: WindowKind::Hermite {
                n,
                normalized: true,
            },
        }
    }

    pub fn custom<F>(label: impl Into<String>, decay: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        if !(decay > 0.0 && decay.is_finite()) {
            return Err(Error::Domain(format!(
                "window decay must be positive, got {decay}"
            )));
        }
        Ok(WindowFunction {
            label: label.into(),
            decay,
            kind: WindowKind::Custom(Arc::new(f)),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        match &self.kind {
            WindowKind::Hermite { n, normalized } => {
                Complex64::new(hermite_fn(*n, *normalized, y), 0.0)
            }
            WindowKind::Custom(f) => f(y),
            WindowKind::Cross { f, g, p } => f.eval(y + 0.5 * p) * g.eval(y - 0.5 * p).conj(),
        }
    }

    /// Polynomial degree carried by the window, used to size quadrature rules.
    pub fn degree_hint(&self) -> usize {
        match &self.kind {
            WindowKind::Hermite { n, .. } => *n,
            WindowKind::Custom(_) => 0,
            WindowKind::Cross { f, g, .. } => f.degree_hint() + g.degree_hint(),
        }
    }

    /// `(n, amplitude)` with `self = amplitude * exp(-y^2/2) H_n(y)`.
    fn hermite_parts(&self) -> Option<(usize, f64)> {
        match self.kind {
            WindowKind::Hermite { n, normalized } if n <= STRUCTURED_MAX_DEGREE => {
                let amp = if normalized {
                    1.0 / hermite_norm_sq(n).ok()?.sqrt()
                } else {
                    1.0
                };
                Some((n, amp))
            }
            _ => None,
        }
    }
}

/// `y -> f(y + p/2) conj(g(y - p/2))`, declared decay `min(decay_f, decay_g)`.
pub fn cross_window(f: &WindowFunction, g: &WindowFunction, p: f64) -> WindowFunction {
    WindowFunction {
        label: format!("K[{},{}](.|{p})", f.label, g.label),
        decay: f.decay.min(g.decay),
        kind: WindowKind::Cross {
            f: Arc::new(f.clone()),
            g: Arc::new(g.clone()),
            p,
        },
    }
}

/// `(pi / alpha)^{1/2} exp(beta^2 / (4 alpha))`, the value of
/// `int exp(-alpha y^2 + beta y) dy` for `alpha > 0`.
pub fn gauss_integral(alpha: f64, beta: Complex64) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("Gauss integral needs alpha > 0, got {alpha}")));
    }
    Ok((PI / alpha).sqrt() * (beta * beta / (4.0 * alpha)).exp())
}

/// `int exp(-y^2) exp(i q y) H_m(y + a) H_n(y + b) dy` in double-double.
pub(crate) fn hermite_product_integral_dd(
    m: usize,
    a: f64,
    n: usize,
    b: f64,
    q: f64,
    rule: &QuadratureRule,
) -> DdComplex {
    let mut acc = DdComplex::ZERO;
    for (x, w) in rule.gaussian_pairs_dd() {
        if w.hi == 0.0 {
            continue;
        }
        let t = w * hermite_eval_dd(m, x.add_f64(a)) * hermite_eval_dd(n, x.add_f64(b));
        if q == 0.0 {
            acc.re += t;
        } else {
            let (s, c) = x.mul_f64(q).sin_cos();
            acc += DdComplex::new(t * c, t * s);
        }
    }
    acc
}

/// `int H_m(y + a) H_n(y + b) exp(-y^2 + i q y) dy` by the given rule.
pub fn hermite_product_integral(
    m: usize,
    a: f64,
    n: usize,
    b: f64,
    q: f64,
    rule: &QuadratureRule,
) -> Complex64 {
    hermite_product_integral_dd(m, a, n, b, q, rule).to_c64()
}

fn structured_pair(
    f: &WindowFunction,
    g: &WindowFunction,
) -> Option<((usize, f64), (usize, f64))> {
    Some((f.hermite_parts()?, g.hermite_parts()?))
}

fn structured_transform(
    (m, am): (usize, f64),
    (n, an): (usize, f64),
    pt: PhasePoint,
    rule: &QuadratureRule,
) -> Complex64 {
    let k = hermite_product_integral_dd(m, 0.5 * pt.p, n, -0.5 * pt.p, pt.q, rule).to_c64();
    k * (INV_SQRT_2PI * am * an * (-0.25 * pt.p * pt.p).exp())
}

/// Quadrature value of `V(f,g)(p,q)`.
pub fn fwt_quadrature(
    f: &WindowFunction,
    g: &WindowFunction,
    pt: PhasePoint,
    rule: &QuadratureRule,
) -> Complex64 {
    if let Some((fs, gs)) = structured_pair(f, g) {
        return structured_transform(fs, gs, pt, rule);
    }
    let decay = f.decay.min(g.decay);
    let half = 0.5 * pt.p;
    let v = rule.integrate_line(decay, |y| {
        Complex64::from_polar(1.0, y * pt.q) * (f.eval(y + half) * g.eval(y - half).conj())
    });
    v * INV_SQRT_2PI
}

/// Quadrature value of `F(f)(xi)`.
pub fn fourier_transform_quadrature(f: &WindowFunction, xi: f64, rule: &QuadratureRule) -> Complex64 {
    if let WindowKind::Cross { f: ff, g: gg, p } = &f.kind {
        if let Some((fs, gs)) = structured_pair(ff, gg) {
            return structured_transform(fs, gs, PhasePoint { p: *p, q: -xi }, rule);
        }
    }
    let v = rule.integrate_line(f.decay, |y| Complex64::from_polar(1.0, -(y * xi)) * f.eval(y));
    v * INV_SQRT_2PI
}

/// `<u, v> = int u conj(v) dy`
pub fn inner_product(u: &WindowFunction, v: &WindowFunction, rule: &QuadratureRule) -> Complex64 {
    fwt_quadrature(u, v, PhasePoint { p: 0.0, q: 0.0 }, rule) * (2.0 * PI).sqrt()
}

/// Closed form of `V(h_m, h_n)(p,q)`:
/// `(-1)^n sqrt(2)^{m+n-1} exp(-(p^2+q^2)/4) H_{m,n}((p+iq)/sqrt 2, (p-iq)/sqrt 2)`.
pub fn fwt_hermite_closed(m: usize, n: usize, pt: PhasePoint) -> Complex64 {
    let z = pt.z() / SQRT_2;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign * SQRT_2.powi(m as i32 + n as i32 - 1) * (-0.25 * pt.z().norm_sqr()).exp();
    complex_hermite_eval(m, n, z) * pref
}

/// How the inner (position) rule is chosen at each phase-plane node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerOrder {
    /// `default_rule_order(degree, q)` per node
    Default,
    Fixed(usize),
}

/// Tensor-product rule on the phase plane for integrands bounded by
/// `exp(-decay (p^2 + q^2))`.
#[derive(Clone, Debug)]
pub struct TensorRule {
    pub p_rule: QuadratureRule,
    pub q_rule: QuadratureRule,
    pub decay: f64,
    pub inner: InnerOrder,
}

impl TensorRule {
    /// Square Gauss-Hermite tensor rule; `decay = 1/2` suits products of two
    /// transforms of Hermite windows.
    pub fn gauss_hermite(order: usize, decay: f64) -> Result<Self> {
        let rule = QuadratureRule::gauss_hermite(order)?;
        Ok(TensorRule {
            p_rule: rule.clone(),
            q_rule: rule,
            decay,
            inner: InnerOrder::Default,
        })
    }

    pub fn with_inner(mut self, inner: InnerOrder) -> Self {
        self.inner = inner;
        self
    }

    /// Phase points with their combined weights, ordered p-major.
    pub fn points(&self) -> Vec<(PhasePoint, f64)> {
        let scale = 1.0 / self.decay.sqrt();
        let lw = |r: &QuadratureRule| -> Vec<(f64, f64)> {
            r.nodes()
                .iter()
                .zip(r.line_weights())
                .map(|(&x, &w)| (x * scale, w * scale))
                .collect()
        };
        let ps = lw(&self.p_rule);
        let qs = lw(&self.q_rule);
        let mut out = Vec::with_capacity(ps.len() * qs.len());
        for &(p, wp) in &ps {
            for &(q, wq) in &qs {
                out.push((PhasePoint { p, q }, wp * wq));
            }
        }
        out
    }

    fn inner_rules(&self, degree: usize, points: &[(PhasePoint, f64)]) -> Result<BTreeMap<usize, QuadratureRule>> {
        let mut orders: Vec<usize> = points.iter().map(|(pt, _)| self.inner_order(degree, pt.q)).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
            .into_par_iter()
            .map(|o| QuadratureRule::gauss_hermite(o).map(|r| (o, r)))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().collect())
    }

    fn inner_order(&self, degree: usize, q: f64) -> usize {
        match self.inner {
            InnerOrder::Default => default_rule_order(degree, q),
            InnerOrder::Fixed(o) => o,
        }
    }
}

/// `V(f,g)` at every node of the tensor rule, in the order of [`TensorRule::points`].
pub fn transform_grid(
    f: &WindowFunction,
    g: &WindowFunction,
    rule2d: &TensorRule,
) -> Result<Vec<Complex64>> {
    let points = rule2d.points();
    let degree = f.degree_hint() + g.degree_hint();
    let rules = rule2d.inner_rules(degree, &points)?;
    Ok(points
        .par_iter()
        .map(|(pt, _)| fwt_quadrature(f, g, *pt, &rules[&rule2d.inner_order(degree, pt.q)]))
        .collect())
}

/// `V(w_a, w_b)` for every pair `a, b <= max_index` of Hermite windows
/// (`h_n`, or `e_n` when `normalized`) at every node of the tensor rule.
/// Entry `[a * (max_index + 1) + b][node]`.
pub fn hermite_transform_grids(
    max_index: usize,
    normalized: bool,
    rule2d: &TensorRule,
) -> Result<Vec<Vec<Complex64>>> {
    let points = rule2d.points();
    let rules = rule2d.inner_rules(2 * max_index, &points)?;
    let w = max_index + 1;
    let amps: Vec<f64> = (0..=max_index)
        .map(|n| {
            if normalized {
                1.0 / hermite_norm_sq(n).map(f64::sqrt).unwrap_or(f64::INFINITY)
            } else {
                1.0
            }
        })
        .collect();
    let per_point: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|(pt, _)| {
            let rule = &rules[&rule2d.inner_order(2 * max_index, pt.q)];
            let mut acc = vec![DdComplex::ZERO; w * w];
            let mut plus = Vec::with_capacity(w);
            let mut minus = Vec::with_capacity(w);
            for (x, wt) in rule.gaussian_pairs_dd() {
                if wt.hi == 0.0 {
                    continue;
                }
                hermite_table_dd(max_index, x.add_f64(0.5 * pt.p), &mut plus);
                hermite_table_dd(max_index, x.add_f64(-0.5 * pt.p), &mut minus);
                let (s, c) = if pt.q == 0.0 {
                    (Dd::ZERO, Dd::ONE)
                } else {
                    x.mul_f64(pt.q).sin_cos()
                };
                let ws = wt * s;
                let wc = wt * c;
                for a in 0..w {
                    let pc = plus[a] * wc;
                    let ps = plus[a] * ws;
                    for b in 0..w {
                        acc[a * w + b] += DdComplex::new(pc * minus[b], ps * minus[b]);
                    }
                }
            }
            let env = INV_SQRT_2PI * (-0.25 * pt.p * pt.p).exp();
            (0..w * w)
                .map(|k| acc[k].to_c64() * (env * amps[k / w] * amps[k % w]))
                .collect()
        })
        .collect();
    Ok((0..w * w)
        .map(|k| per_point.iter().map(|v| v[k]).collect())
        .collect())
}

/// `int int A conj(B) dp dq` from two transform grids on the same tensor rule.
pub fn phase_inner(a: &[Complex64], b: &[Complex64], rule2d: &TensorRule) -> Complex64 {
    rule2d
        .points()
        .iter()
        .zip(a.iter().zip(b))
        .map(|((_, w), (x, y))| x * y.conj() * *w)
        .sum()
}

/// Both sides of the Moyal identity `<V(f,g), V(phi,psi)> = <f,phi> <psi,g>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoyalValue {
    /// phase-plane double integral
    pub lhs: Complex64,
    /// product of the two line inner products
    pub rhs: Complex64,
}

pub fn moyal_inner(
    f: &WindowFunction,
    g: &WindowFunction,
    phi: &WindowFunction,
    psi: &WindowFunction,
    rule2d: &TensorRule,
) -> Result<MoyalValue> {
    let a = transform_grid(f, g, rule2d)?;
    let b = transform_grid(phi, psi, rule2d)?;
    let lhs = phase_inner(&a, &b, rule2d);
    let deg = f.degree_hint() + g.degree_hint() + phi.degree_hint() + psi.degree_hint();
    let line = QuadratureRule::gauss_hermite(default_rule_order(deg, 0.0))?;
    let rhs = inner_product(f, phi, &line) * inner_product(psi, g, &line);
    Ok(MoyalValue { lhs, rhs })
}
