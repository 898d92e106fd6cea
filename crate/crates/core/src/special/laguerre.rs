//! Generalized Laguerre polynomials `L_n^(alpha)`.
//!
//! ```text
//! L_0 = 1,  L_1 = 1 + alpha - x,
//! (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}.
//! ```

/// `L_n^(alpha)(x)` by the forward recurrence.
pub fn laguerre_eval(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
