//! Quadrature rules on the real line.
//!
//! Gauss-Hermite rules (weight `exp(-y^2)`) start from the Golub-Welsch
//! eigenvalues of the symmetric Jacobi matrix, then every node is polished by
//! Newton steps on `H_N` in double-double arithmetic and the weights are taken
//! from the Christoffel function `1 / sum_k e_k(x)^2`, which never overflows.
//! The double-double copies let Hermite-window integrals cancel terms of
//! magnitude `1e12` down to values near zero.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// `sum w_i F(x_i) ~ int exp(-y^2) F(y) dy`
    GaussHermite,
    /// `sum w_i F(x_i) ~ int F(y) dy`, panels of Gauss-Legendre points on `[-L, L]`
    CompositeAdaptive,
}

/// Immutable node/weight set; cheap to share across threads.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    nodes_dd: Vec<Dd>,
    weights_dd: Vec<Dd>,
    /// `w_i exp(x_i^2)` for Gauss-Hermite, plain weights otherwise
    line_weights: Vec<f64>,
}

/// Rule order used for a Hermite-window transform with polynomial degree
/// `m + n` at modulation `q`: `2(m+n) + ceil(5|q|) + 40`, clamped to `[64, 512]`.
pub fn default_rule_order(degree_sum: usize, q: f64) -> usize {
    let raw = 2 * degree_sum + (5.0 * q.abs()).ceil() as usize + 40;
    raw.clamp(64, 512)
}

pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    QuadratureRule::gauss_hermite(order)
}

/// Hermite recurrence value ratio `H_N(x) / (2N H_{N-1}(x))`, the Newton step.
fn newton_step(order: usize, x: Dd) -> Dd {
    let two_x = x.mul_f64(2.0);
    let mut prev = Dd::ONE;
    let mut cur = two_x;
    for k in 1..order {
        let next = two_x * cur - prev.mul_f64(2.0 * k as f64);
        prev = cur;
        cur = next;
        if cur.hi.abs() > 1e200 {
            cur = cur.ldexp(-600);
            prev = prev.ldexp(-600);
        }
    }
    if order == 1 {
        return x;
    }
    cur / prev.mul_f64(2.0 * order as f64)
}

/// `1 / sum_{k<N} e_k(x)^2` with `e_k` the orthonormal Hermite functions.
fn christoffel_scaled(order: usize, x: Dd, a: &[Dd], b: &[Dd], e0_const: Dd) -> Dd {
    let e0 = e0_const * (x.sqr().mul_f64(-0.5)).exp();
    let mut sum = e0.sqr();
    if order == 1 {
        return Dd::ONE / sum;
    }
    let mut prev = e0;
    let mut cur = a[0] * x * e0;
    sum += cur.sqr();
    for k in 1..order - 1 {
        let next = a[k] * x * cur - b[k] * prev;
        prev = cur;
        cur = next;
        sum += cur.sqr();
    }
    Dd::ONE / sum
}

impl QuadratureRule {
    pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
        if order == 0 {
            return Err(Error::RuleConstruction("order must be at least 1".into()));
        }
        let mut jacobi = DMatrix::<f64>::zeros(order, order);
        for k in 1..order {
            let off = (k as f64 / 2.0).sqrt();
            jacobi[(k - 1, k)] = off;
            jacobi[(k, k - 1)] = off;
        }
        let eig = nalgebra::SymmetricEigen::try_new(jacobi, 1e-15 * f64::EPSILON, 10_000)
            .ok_or_else(|| {
                Error::RuleConstruction(format!("symmetric eigensolve did not converge (order {order})"))
            })?;
        let mut guess: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        guess.sort_by(f64::total_cmp);

        let mut nodes_dd = vec![Dd::ZERO; order];
        let half = order / 2;
        for i in 0..half {
            let j = order - 1 - i;
            let mut x = Dd::from_f64(0.5 * (guess[j] - guess[i]));
            let mut converged = false;
            for _ in 0..12 {
                let step = newton_step(order, x);
                x = x - step;
                if step.hi.abs() <= 1e-31 * x.hi.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged && newton_step(order, x).hi.abs() > 1e-26 * x.hi.abs().max(1.0) {
                return Err(Error::RuleConstruction(format!(
                    "Newton refinement of node {j} did not converge (order {order})"
                )));
            }
            nodes_dd[i] = -x;
            nodes_dd[j] = x;
        }
        // odd orders keep the exact zero in the middle

        let a: Vec<Dd> = (0..order)
            .map(|k| Dd::from_f64(2.0).div_f64((k + 1) as f64).sqrt())
            .collect();
        let b: Vec<Dd> = (0..order)
            .map(|k| Dd::from_f64(k as f64).div_f64((k + 1) as f64).sqrt())
            .collect();
        let e0_const = (Dd::ONE / Dd::PI).sqrt().sqrt();

        let mut scaled = vec![Dd::ZERO; order];
        for i in half..order {
            let s = christoffel_scaled(order, nodes_dd[i], &a, &b, e0_const);
            scaled[i] = s;
            scaled[order - 1 - i] = s;
        }
        let weights_dd: Vec<Dd> = nodes_dd
            .iter()
            .zip(&scaled)
            .map(|(x, s)| *s * (-x.sqr()).exp())
            .collect();
        Ok(QuadratureRule {
            kind: RuleKind::GaussHermite,
            nodes: nodes_dd.iter().map(|x| x.to_f64()).collect(),
            weights: weights_dd.iter().map(|w| w.to_f64()).collect(),
            line_weights: scaled.iter().map(|s| s.to_f64()).collect(),
            nodes_dd,
            weights_dd,
        })
    }

    /// Panels of `points_per_panel` Gauss-Legendre points on `[-half_width, half_width]`.
    pub fn composite(half_width: f64, panels: usize, points_per_panel: usize) -> Result<QuadratureRule> {
        if !(half_width > 0.0) || panels == 0 || points_per_panel == 0 {
            return Err(Error::RuleConstruction(format!(
                "invalid composite layout: half_width={half_width}, panels={panels}, points={points_per_panel}"
            )));
        }
        let (gl_x, gl_w) = gauss_legendre(points_per_panel);
        let h = 2.0 * half_width / panels as f64;
        let mut nodes = Vec::with_capacity(panels * points_per_panel);
        let mut weights = Vec::with_capacity(panels * points_per_panel);
        for p in 0..panels {
            let mid = -half_width + (p as f64 + 0.5) * h;
            for (x, w) in gl_x.iter().zip(&gl_w) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        let nodes_dd: Vec<Dd> = nodes.iter().map(|&x| Dd::from_f64(x)).collect();
        let weights_dd: Vec<Dd> = weights.iter().map(|&w| Dd::from_f64(w)).collect();
        Ok(QuadratureRule {
            kind: RuleKind::CompositeAdaptive,
            line_weights: weights.clone(),
            nodes,
            weights,
            nodes_dd,
            weights_dd,
        })
    }

    /// Composite rule for integrands bounded by `exp(-y^2)` times an
    /// oscillation of angular frequency up to `bandwidth`: the half-width makes
    /// the Gaussian tail smaller than `tol` and the panel width shrinks with the
    /// bandwidth.
    pub fn composite_adaptive(bandwidth: f64, tol: f64) -> Result<QuadratureRule> {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::RuleConstruction(format!("tolerance {tol} not in (0, 1)")));
        }
        let half_width = (-tol.ln()).sqrt() + 0.5;
        let h = (2.0 / (bandwidth.abs() + 1.0)).min(0.5);
        let panels = (2.0 * half_width / h).ceil() as usize;
        QuadratureRule::composite(half_width, panels, 16)
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Gauss-Hermite weights relative to `exp(-y^2)`. For orders above roughly
    /// 360 the outermost weights fall below the `f64` range and read as 0.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights for `int F(y) dy`: `w_i exp(x_i^2)` for Gauss-Hermite rules.
    pub fn line_weights(&self) -> &[f64] {
        &self.line_weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `int exp(-y^2) F(y) dy`.
    pub fn integrate_gaussian<F>(&self, f: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        match self.kind {
            RuleKind::GaussHermite => self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum(),
            RuleKind::CompositeAdaptive => self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * (-x * x).exp() * f(x))
                .sum(),
        }
    }

    /// `int F(y) dy` for `|F(y)| <~ exp(-decay y^2)`, substituting `y = s / sqrt(decay)`.
    pub fn integrate_line<F>(&self, decay: f64, f: F) -> Complex64
    where
        F: Fn(f64) -> Complex64,
    {
        let scale = 1.0 / decay.sqrt();
        let sum: Complex64 = self
            .nodes
            .iter()
            .zip(&self.line_weights)
            .map(|(&x, &w)| f(x * scale) * w)
            .sum();
        sum * scale
    }

    /// `(node, weight)` pairs in double-double for `int exp(-y^2) F(y) dy`.
    pub(crate) fn gaussian_pairs_dd(&self) -> Vec<(Dd, Dd)> {
        match self.kind {
            RuleKind::GaussHermite => self
                .nodes_dd
                .iter()
                .copied()
                .zip(self.weights_dd.iter().copied())
                .collect(),
            RuleKind::CompositeAdaptive => self
                .nodes_dd
                .iter()
                .zip(&self.weights_dd)
                .map(|(&x, &w)| (x, w * (-x.sqr()).exp()))
                .collect(),
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            z = 0.0;
            dp = 1.0;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Adaptive bisection with an 8-point Gauss-Legendre panel rule; a panel is
/// accepted when it agrees with its two halves to `tol` (relative to the running scale).
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (gx, gw) = gauss_legendre(8);
    let panel = |lo: f64, hi: f64| -> Complex64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        gx.iter().zip(&gw).map(|(x, w)| f(mid + half * x) * (w * half)).sum()
    };
    let mut total = Complex64::new(0.0, 0.0);
    let mut stack = vec![(a, b, panel(a, b), 0usize)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(lo, mid);
        let right = panel(mid, hi);
        let refined = left + right;
        if (refined - whole).norm() <= tol * (1.0 + refined.norm()) || depth >= 40 {
            total += refined;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn order_one_and_two() {
        let r = gauss_hermite_rule(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert!((r.weights()[0] - SQRT_PI).abs() < 1e-15);
        let r = gauss_hermite_rule(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r.nodes()[0] + s).abs() < 1e-16 && (r.nodes()[1] - s).abs() < 1e-16);
        for w in r.weights() {
            assert!((w - SQRT_PI / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(matches!(gauss_hermite_rule(0), Err(Error::RuleConstruction(_))));
    }

    #[test]
    fn nodes_symmetric_and_sorted() {
        for order in [3, 10, 64, 257] {
            let r = gauss_hermite_rule(order).unwrap();
            let x = r.nodes();
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for i in 0..order {
                assert_eq!(x[i], -x[order - 1 - i]);
            }
            assert!(r.weights().iter().all(|&w| w > 0.0));
            let total: f64 = r.weights().iter().sum();
            assert!((total - SQRT_PI).abs() < 1e-13, "order {order}");
        }
    }

    #[test]
    fn large_order_builds() {
        let r = gauss_hermite_rule(512).unwrap();
        let total: f64 = r.weights().iter().sum();
        assert!((total - SQRT_PI).abs() < 1e-13);
        // largest zero of H_512 sits just inside sqrt(2N+1)
        let max = *r.nodes().last().unwrap();
        assert!(max < (1025f64).sqrt() && max > 30.0);
    }

    #[test]
    fn gauss_legendre_is_exact_for_low_degree() {
        let (x, w) = gauss_legendre(8);
        for k in 0..16 {
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((s - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn composite_rule_integrates_gaussian() {
        let r = QuadratureRule::composite_adaptive(4.0, 1e-16).unwrap();
        assert_eq!(r.kind(), RuleKind::CompositeAdaptive);
        let v = r.integrate_gaussian(|y| (3.0 * y).cos());
        assert!((v - SQRT_PI * (-9.0f64 / 4.0).exp()).abs() < 1e-14);
        assert!(QuadratureRule::composite(0.0, 1, 1).is_err());
    }

    #[test]
    fn adaptive_integration() {
        let v = integrate_adaptive(|y| Complex64::new((-y * y).exp(), 0.0), -9.0, 9.0, 1e-14);
        assert!((v.re - SQRT_PI).abs() < 1e-13);
    }

    #[test]
    fn default_order_formula() {
        assert_eq!(default_rule_order(0, 0.0), 64);
        assert_eq!(default_rule_order(24, 3.0), 103);
        assert_eq!(default_rule_order(500, 0.0), 512);
    }
}
