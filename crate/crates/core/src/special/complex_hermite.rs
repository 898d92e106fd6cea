//! Complex Hermite polynomials `H_{m,n}(z, zbar)`.
//!
//! They are the Taylor coefficients of
//!
//! ```text
//! G(u, v) = exp(-uv + z u + zbar v) = sum_{m,n} H_{m,n}(z, zbar) u^m v^n / (m! n!).
//! ```
//!
//! Expanding the three exponential factors and collecting `u^m v^n` gives the
//! explicit form
//!
//! ```text
//! H_{m,n} = sum_{k=0}^{min(m,n)} (-1)^k k! C(m,k) C(n,k) z^{m-k} zbar^{n-k}.
//! ```
//!
//! Differentiating `G` gives two recurrences:
//!
//! * `dG/du = (z - v) G`, hence `H_{m+1,n} = z H_{m,n} - n H_{m,n-1}`;
//! * `dG/dv = (zbar - u) G`, hence `H_{m,n+1} = zbar H_{m,n} - m H_{m-1,n}`.
//!
//! Setting `v = 0` leaves `exp(z u)`, so `H_{m,0} = z^m`. Numerical evaluation
//! starts from that row and applies the second recurrence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::laguerre::laguerre_eval;
use crate::dd::{Dd, DdComplex};

/// Exact integer coefficients of `H_{m,n}` as a polynomial in the commuting
/// symbols `z` and `zbar`; key `(j, k)` multiplies `z^j zbar^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexHermiteTable {
    pub m: usize,
    pub n: usize,
    coeffs: BTreeMap<(usize, usize), BigInt>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl ComplexHermiteTable {
    /// Coefficients read off the formal expansion of the generating function.
    pub fn from_generating_function(m: usize, n: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut k_fact = BigInt::one();
        for k in 0..=m.min(n) {
            if k > 0 {
                k_fact *= BigInt::from(k);
            }
            let mut c = &k_fact * binomial(m, k) * binomial(n, k);
            if k % 2 == 1 {
                c = -c;
            }
            coeffs.insert((m - k, n - k), c);
        }
        ComplexHermiteTable { m, n, coeffs }
    }

    /// Coefficients built by `H_{i+1,j} = z H_{i,j} - j H_{i,j-1}` from `H_{0,j} = zbar^j`.
    pub fn by_recurrence(m: usize, n: usize) -> Self {
        // column[j] holds H_{i,j} for the current i
        let mut column: Vec<BTreeMap<(usize, usize), BigInt>> = (0..=n)
            .map(|j| BTreeMap::from([((0, j), BigInt::one())]))
            .collect();
        for _ in 0..m {
            let mut next = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let mut poly: BTreeMap<(usize, usize), BigInt> = column[j]
                    .iter()
                    .map(|(&(a, b), c)| ((a + 1, b), c.clone()))
                    .collect();
                if j > 0 {
                    for (&key, c) in &column[j - 1] {
                        let e = poly.entry(key).or_insert_with(BigInt::zero);
                        *e -= c * BigInt::from(j);
                    }
                }
                poly.retain(|_, c| !c.is_zero());
                next.push(poly);
            }
            column = next;
        }
        ComplexHermiteTable {
            m,
            n,
            coeffs: column.swap_remove(n),
        }
    }

    pub fn coefficient(&self, j: usize, k: usize) -> BigInt {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.coeffs.iter()
    }

    /// Direct monomial evaluation; fine for small degrees, cancellation-prone beyond.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&(j, k), c)| {
                c.to_f64().unwrap_or(f64::NAN) * z.powu(j as u32) * z.conj().powu(k as u32)
            })
            .sum()
    }
}

pub fn complex_hermite_table(m: usize, n: usize) -> ComplexHermiteTable {
    ComplexHermiteTable::from_generating_function(m, n)
}

/// All `H_{i,j}(z, zbar)` for `i <= max_m`, `j <= max_n`.
///
/// The recurrence runs in double-double arithmetic and rounds at the end: in
/// `f64` the alternating terms of size `|z|^{m+n}` cancel badly enough to
/// cost seven digits at `|z| = 5`, `m = n = 20`.
#[derive(Clone, Debug)]
pub struct ComplexHermiteGrid {
    max_m: usize,
    max_n: usize,
    values: Vec<Complex64>,
}

impl ComplexHermiteGrid {
    pub fn new(max_m: usize, max_n: usize, z: Complex64) -> Self {
        Self::build(max_m, max_n, z, false)
    }

    /// `H_{i,j} / sqrt(i! j!)`, which stays representable for indices far past
    /// where the factorials overflow.
    pub fn normalized(max_m: usize, max_n: usize, z: Complex64) -> Self {
        Self::build(max_m, max_n, z, true)
    }

    fn build(max_m: usize, max_n: usize, z: Complex64, normalized: bool) -> Self {
        let zd = DdComplex::new(Dd::from_f64(z.re), Dd::from_f64(z.im));
        let values = grid_dd(max_m, max_n, zd, normalized)
            .into_iter()
            .map(DdComplex::to_c64)
            .collect();
        ComplexHermiteGrid {
            max_m,
            max_n,
            values,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i <= self.max_m && j <= self.max_n);
        self.values[i * (self.max_n + 1) + j]
    }
}

/// `H_{m,n}(z, zbar)` via the recurrence route.
pub fn complex_hermite_eval(m: usize, n: usize, z: Complex64) -> Complex64 {
    ComplexHermiteGrid::new(m, n, z).get(m, n)
}

/// `H_{m,n}(z, zbar) / sqrt(m! n!)` via the scaled recurrence.
pub fn complex_hermite_eval_normalized(m: usize, n: usize, z: Complex64) -> Complex64 {
    ComplexHermiteGrid::normalized(m, n, z).get(m, n)
}

/// `H_{m,n}` through generalized Laguerre polynomials:
/// `(-1)^s s! |z|^d exp(i (m-n) arg z) L_s^(d)(|z|^2)` with `s = min(m,n)`, `d = |m-n|`.
///
/// `arg` is the principal value in `(-pi, pi]`. At `z = 0` the phase is never
/// consulted: the result is 0 for `m != n` and `(-1)^m m!` otherwise.
pub fn complex_hermite_via_laguerre(m: usize, n: usize, z: Complex64) -> Complex64 {
    let s = m.min(n);
    let d = m.abs_diff(n);
    let s_fact: f64 = (1..=s).map(|k| k as f64).product();
    let signed_fact = if s % 2 == 0 { s_fact } else { -s_fact };
    if z == Complex64::zero() {
        return if d == 0 {
            Complex64::new(signed_fact, 0.0)
        } else {
            Complex64::zero()
        };
    }
    let r2 = z.norm_sqr();
    let radial = signed_fact * z.norm().powi(d as i32) * laguerre_eval(s, d as f64, r2);
    let phase = (m as f64 - n as f64) * z.arg();
    Complex64::from_polar(radial, phase)
}

/// All `H_{i,j}` at a double-double point, row-major with stride `max_n + 1`.
pub(crate) fn complex_hermite_grid_dd(max_m: usize, max_n: usize, z: DdComplex) -> Vec<DdComplex> {
    grid_dd(max_m, max_n, z, false)
}

fn grid_dd(max_m: usize, max_n: usize, z: DdComplex, normalized: bool) -> Vec<DdComplex> {
    let w = max_n + 1;
    let mut values = vec![DdComplex::ZERO; (max_m + 1) * w];
    let zc = z.conj();
    let top = max_m.max(max_n) + 1;
    let (roots, inv_roots): (Vec<Dd>, Vec<Dd>) = if normalized {
        (0..=top)
            .map(|k| {
                let r = Dd::from_f64(k as f64).sqrt();
                (r, if k == 0 { Dd::ZERO } else { Dd::ONE / r })
            })
            .unzip()
    } else {
        (Vec::new(), Vec::new())
    };
    let mut row0 = DdComplex::new(Dd::ONE, Dd::ZERO);
    for i in 0..=max_m {
        if i > 0 {
            row0 = row0 * z;
            if normalized {
                row0 = row0.scale(inv_roots[i]);
            }
        }
        values[i * w] = row0;
    }
    for j in 0..max_n {
        for i in 0..=max_m {
            let mut v = zc * values[i * w + j];
            if i > 0 {
                let lower = values[(i - 1) * w + j];
                v = v - if normalized { lower.scale(roots[i]) } else { lower.scale_f64(i as f64) };
            }
            values[i * w + j + 1] = if normalized { v.scale(inv_roots[j + 1]) } else { v };
        }
    }
    values
}

/// `H_{m,m}(z, zbar) / m!` for `m < order` from the band `H_{m,m}`, `H_{m+1,m}`
/// of the two recurrences:
///
/// ```text
/// H_{m+1,m}   = z H_{m,m} - m H_{m,m-1}
/// H_{m+1,m+1} = zbar H_{m+1,m} - (m+1) H_{m,m}
/// ```
///
/// (`H_{m,m-1}` is the previous band entry). With `D_m = H_{m,m}/m!` and
/// `E_m = H_{m+1,m}/sqrt((m+1)! m!)` both stay of the size of `exp(|z|^2/2)`,
/// and the band never meets the cancellation of the full grid.
pub fn complex_hermite_diagonal_normalized(order: usize, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(order);
    let mut d = Complex64::one();
    let mut e = z;
    for m in 0..order {
        out.push(d);
        let r = ((m + 1) as f64).sqrt();
        let next_d = (z.conj() * e - r * d) / r;
        let next_e = (z * next_d - r * e) / ((m + 2) as f64).sqrt();
        d = next_d;
        e = next_e;
    }
    out
}
