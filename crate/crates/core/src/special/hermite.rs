//! Physicists' Hermite polynomials `H_n` (leading coefficient `2^n`).
//!
//! Evaluation uses the three-term recurrence
//!
//! ```text
//! H_0 = 1,  H_1 = 2x,  H_{n+1}(x) = 2x H_n(x) - 2n H_{n-1}(x).
//! ```
//!
//! It follows from the generating function `G(x, t) = exp(-t^2 + 2xt) =
//! sum_n H_n(x) t^n / n!`: differentiating in `t` gives
//! `dG/dt = (2x - 2t) G`, and comparing the coefficients of `t^n / n!` on both
//! sides yields `H_{n+1} = 2x H_n - 2n H_{n-1}`. The forward recurrence follows
//! the dominant solution, so it is stable and avoids the cancellation of
//! monomial expansions at high degree.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::dd::Dd;
use crate::poly::ExactPolynomial;
use crate::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Exact integer coefficients of `H_n`.
pub fn hermite_exact(n: usize) -> ExactPolynomial {
    let mut prev = ExactPolynomial::constant(1);
    if n == 0 {
        return prev;
    }
    let two = BigInt::from(2);
    let mut cur = ExactPolynomial::from_i64(&[0, 2]);
    for k in 1..n {
        let next = cur
            .shift_up()
            .scale(&two)
            .sub(&prev.scale(&BigInt::from(2 * k)));
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n(x)` by the forward recurrence.
///
/// Returns [`Error::Overflow`] when `|H_n(x)|` exceeds `f64::MAX`.
pub fn hermite_eval(n: usize, x: f64) -> Result<f64> {
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow {
            what: format!("H_{n}({x})"),
        })
    }
}

/// `(sign, ln|H_n(x)|)` from the same recurrence with exact power-of-two
/// rescaling of the iterates. `sign` is 0 when `H_n(x) = 0`.
pub fn hermite_eval_log(n: usize, x: f64) -> (f64, f64) {
    const RESCALE_ABOVE: f64 = 1e150;
    const SHIFT: i32 = 500;
    let mut log_scale = 0.0;
    let mut prev = 1.0;
    let mut cur = if n == 0 { 1.0 } else { 2.0 * x };
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            let f = 2f64.powi(-SHIFT);
            cur *= f;
            prev *= f;
            log_scale += f64::from(SHIFT) * std::f64::consts::LN_2;
        }
    }
    if cur == 0.0 {
        (0.0, f64::NEG_INFINITY)
    } else {
        (cur.signum(), cur.abs().ln() + log_scale)
    }
}

/// `H_n` at a double-double point.
pub(crate) fn hermite_eval_dd(n: usize, x: Dd) -> Dd {
    let mut prev = Dd::ONE;
    if n == 0 {
        return prev;
    }
    let two_x = x.mul_f64(2.0);
    let mut cur = two_x;
    for k in 1..n {
        let next = two_x * cur - prev.mul_f64(2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_0(x), ..., H_max(x)` at a double-double point.
pub(crate) fn hermite_table_dd(max: usize, x: Dd, out: &mut Vec<Dd>) {
    out.clear();
    out.push(Dd::ONE);
    if max == 0 {
        return;
    }
    let two_x = x.mul_f64(2.0);
    out.push(two_x);
    for k in 1..max {
        let next = two_x * out[k] - out[k - 1].mul_f64(2.0 * k as f64);
        out.push(next);
    }
}

/// `||h_n||^2 = 2^n n! sqrt(pi)`, with the integer part formed exactly.
pub fn hermite_norm_sq(n: usize) -> Result<f64> {
    let fact: BigUint = (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k);
    let big = fact << n;
    let v = big.to_f64().unwrap_or(f64::INFINITY) * SQRT_PI;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            what: format!("||h_{n}||^2"),
        })
    }
}

/// `ln(2^n n! sqrt(pi))`, finite for every `n`.
pub fn hermite_norm_sq_ln(n: usize) -> f64 {
    let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    n as f64 * std::f64::consts::LN_2 + ln_fact + 0.5 * std::f64::consts::PI.ln()
}
