//! Registered verification suites and their default parameter grids.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::*;
use crate::poly::ExactPolynomial;
use crate::quadrature::default_rule_order;
use crate::report::VerificationReport;
use crate::special::{complex_hermite_via_laguerre, hermite_exact, hermite_norm_sq};
use crate::wigner::{hermite_transform_grids, inner_product, phase_inner};

/// Seed for the pseudo-random points of the sampled suites.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub id: &'static str,
    pub description: &'static str,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo { id: "genfn-real", description: "sum H_m(x) t^m/m! against exp(-t^2+2xt)" },
    SuiteInfo { id: "genfn-product", description: "double Hermite series against exp(-(u^2+v^2)+2y(u+v)+p(u-v))" },
    SuiteInfo { id: "genfn-complex", description: "sum H_{m,n} u^m v^n/(m!n!) against exp(-uv+zu+zbar v)" },
    SuiteInfo { id: "mehler", description: "Mehler series against the closed kernel" },
    SuiteInfo { id: "thm-hVH", description: "quadrature V(h_m,h_n)(p,q) against the complex Hermite closed form" },
    SuiteInfo { id: "cor-fhnhm", description: "p = 0 corollary: Fourier integral of H_m H_n exp(-y^2)" },
    SuiteInfo { id: "cor-inthnhm", description: "q = 0 corollary: shifted product integral of H_m H_n" },
    SuiteInfo { id: "remark-orthogonality", description: "t = 0: int H_m H_n exp(-y^2) = sqrt(pi) 2^m m! delta_mn" },
    SuiteInfo { id: "gen-mehler-diag", description: "diagonal generating function sum lam^m H_{m,m}/m!" },
    SuiteInfo { id: "gen-mehler-diag-hvh1", description: "H_{m,m} through V(h_m,h_m) at (sqrt2 p, sqrt2 q)" },
    SuiteInfo { id: "gen-mehler-diag-hvh2", description: "diagonal series against the Mehler-kernel Fourier integral" },
    SuiteInfo { id: "wong-laguerre", description: "V(e_{j+k},e_j) and V(e_j,e_{j+k}) against the Laguerre forms" },
    SuiteInfo { id: "orthogonality", description: "off-diagonal Gram entries of H_{m,n} under exp(-|z|^2)" },
    SuiteInfo { id: "orthogonality-norms", description: "diagonal Gram entries against pi m! n!" },
    SuiteInfo { id: "moyal", description: "<V(f,g),V(phi,psi)> against <f,phi><psi,g> for h_0..h_3" },
    SuiteInfo { id: "norm-transfer", description: "||V(h_m,h_n)||^2 against ||h_m||^2 ||h_n||^2" },
    SuiteInfo { id: "route-laguerre", description: "complex Hermite recurrence against the Laguerre closed form" },
    SuiteInfo { id: "route-hermite-exact", description: "H_n recurrence against exact rational evaluation" },
    SuiteInfo { id: "all", description: "union of every suite above" },
];

pub fn list_suites() -> &'static [SuiteInfo] {
    SUITES
}

/// Overrides for a suite's default grid. `None` keeps the default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteParams {
    /// replaces every check's tolerance
    pub tol: Option<f64>,
    /// fixed rule order: the line rule for one-dimensional suites, the
    /// per-axis order for phase-plane suites
    pub quad_order: Option<usize>,
    /// series truncation order
    pub trunc_order: Option<usize>,
    /// largest Hermite index in index sweeps
    pub max_index: Option<usize>,
    pub seed: Option<u64>,
}

impl SuiteParams {
    fn trunc(&self, default: usize) -> Result<SeriesTruncation> {
        SeriesTruncation::new(self.trunc_order.unwrap_or(default))
    }

    fn order(&self, degree: usize, q: f64) -> usize {
        self.quad_order.unwrap_or_else(|| default_rule_order(degree, q))
    }

    fn max(&self, default: usize) -> usize {
        self.max_index.unwrap_or(default)
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// Runs a registered suite; checks appear in grid order, which is the same
/// for every run.
pub fn run_suite(suite_id: &str, params: &SuiteParams) -> Result<VerificationReport> {
    let mut checks = if suite_id == "all" {
        let mut all = Vec::new();
        for info in SUITES.iter().filter(|s| s.id != "all") {
            all.extend(suite_checks(info.id, params)?);
        }
        all
    } else {
        suite_checks(suite_id, params)?
    };
    if let Some(tol) = params.tol {
        for ch in &mut checks {
            *ch = IdentityCheck {
                truncation: ch.truncation,
                ..IdentityCheck::new(&ch.id, std::mem::take(&mut ch.params), ch.lhs, ch.rhs, tol)
            };
        }
    }
    Ok(VerificationReport::new(suite_id, checks))
}

fn suite_checks(id: &str, sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    match id {
        "genfn-real" => genfn_real(sp),
        "genfn-product" => genfn_product(sp),
        "genfn-complex" => genfn_complex(sp),
        "mehler" => mehler(sp),
        "thm-hVH" => theorem(sp),
        "cor-fhnhm" => corollary(sp, false),
        "cor-inthnhm" => corollary(sp, true),
        "remark-orthogonality" => remark(sp),
        "gen-mehler-diag" => diag(sp),
        "gen-mehler-diag-hvh1" => diag_hvh1(sp),
        "gen-mehler-diag-hvh2" => diag_hvh2(sp),
        "wong-laguerre" => wong(sp),
        "orthogonality" => orthogonality(sp, false),
        "orthogonality-norms" => orthogonality(sp, true),
        "moyal" => moyal(sp),
        "norm-transfer" => norm_transfer(sp),
        "route-laguerre" => route_laguerre(sp),
        "route-hermite-exact" => route_hermite_exact(sp),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Points uniform in the disk `|z| <= radius`.
pub fn random_disk(count: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = 2.0 * PI * rng.gen::<f64>();
            Complex64::from_polar(r, theta)
        })
        .collect()
}

fn build_rules(orders: impl IntoIterator<Item = usize>) -> Result<BTreeMap<usize, QuadratureRule>> {
    let mut list: Vec<usize> = orders.into_iter().collect();
    list.sort_unstable();
    list.dedup();
    list.into_par_iter()
        .map(|o| QuadratureRule::gauss_hermite(o).map(|r| (o, r)))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().collect())
}

fn int_range(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(f64::from).collect()
}

fn genfn_real(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let trunc = sp.trunc(80)?;
    let mut out = Vec::new();
    for &t in &[-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0] {
        for x in int_range(-2, 2) {
            out.push(check_genfn_real(t, x, trunc));
        }
    }
    Ok(out)
}

fn genfn_product(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let trunc = sp.trunc(60)?;
    let uv = [-0.5, -0.2, 0.0, 0.3, 0.5];
    let mut grid = Vec::new();
    for &u in &uv {
        for &v in &uv {
            for y in int_range(-1, 1) {
                for &p in &[-2.0, 0.0, 2.0] {
                    grid.push((u, v, y, p));
                }
            }
        }
    }
    Ok(grid.par_iter().map(|&(u, v, y, p)| check_genfn_product(u, v, y, p, trunc)).collect())
}

fn genfn_complex(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let trunc = sp.trunc(60)?;
    let uv = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.2),
        Complex64::new(0.0, -0.4),
    ];
    let zs = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(-0.5, 1.5),
        Complex64::new(2.0, 0.0),
    ];
    let mut grid = Vec::new();
    for &u in &uv {
        for &v in &uv {
            for &z in &zs {
                grid.push((u, v, z));
            }
        }
    }
    Ok(grid.par_iter().map(|&(u, v, z)| check_genfn_complex(u, v, z, trunc)).collect())
}

fn mehler(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let mut grid = Vec::new();
    for k in 1..=8 {
        for s in [-1.0, 1.0] {
            let lam = s * f64::from(k) / 10.0;
            for x in int_range(-2, 2) {
                for y in int_range(-2, 2) {
                    grid.push((lam, x, y));
                }
            }
        }
    }
    grid.par_iter()
        .map(|&(lam, x, y)| check_mehler(x, y, lam, sp.trunc(default_series_order(lam))?))
        .collect()
}

fn theorem(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(12);
    let mut grid = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            for p in int_range(-3, 3) {
                for q in int_range(-3, 3) {
                    grid.push((m, n, PhasePoint { p, q }));
                }
            }
        }
    }
    let rules = build_rules(grid.iter().map(|&(m, n, pt)| sp.order(m + n, pt.q)))?;
    Ok(grid
        .par_iter()
        .map(|&(m, n, pt)| check_theorem_hvh(m, n, pt, &rules[&sp.order(m + n, pt.q)]))
        .collect())
}

fn corollary(sp: &SuiteParams, q0: bool) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(12);
    let mut grid = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            for t in int_range(-3, 3) {
                grid.push((m, n, t));
            }
        }
    }
    let freq = |t: f64| if q0 { 0.0 } else { t };
    let rules = build_rules(grid.iter().map(|&(m, n, t)| sp.order(m + n, freq(t))))?;
    Ok(grid
        .par_iter()
        .map(|&(m, n, t)| {
            let rule = &rules[&sp.order(m + n, freq(t))];
            if q0 {
                check_corollary_q0(m, n, t, rule)
            } else {
                check_corollary_p0(m, n, t, rule)
            }
        })
        .collect())
}

fn remark(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(15);
    let rule = QuadratureRule::gauss_hermite(sp.order(2 * max, 0.0))?;
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            out.push(check_remark_orthogonality(m, n, &rule)?);
        }
    }
    Ok(out)
}

const LAMBDAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn diag(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let zs = random_disk(20, 2.0, sp.seed());
    let mut grid = Vec::new();
    for &lam in &LAMBDAS {
        for &z in &zs {
            grid.push((lam, z));
        }
    }
    grid.par_iter()
        .map(|&(lam, z)| check_diag_generating(z, lam, sp.trunc(default_series_order(lam))?))
        .collect()
}

fn diag_hvh1(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let zs = random_disk(20, 2.0, sp.seed());
    let max = sp.max(12);
    let mut grid = Vec::new();
    for m in 0..=max {
        for &z in &zs {
            grid.push((m, z));
        }
    }
    let order = |m: usize, z: Complex64| sp.order(2 * m, SQRT_2 * z.im);
    let rules = build_rules(grid.iter().map(|&(m, z)| order(m, z)))?;
    Ok(grid.par_iter().map(|&(m, z)| check_diag_hvh1(m, z, &rules[&order(m, z)])).collect())
}

fn diag_hvh2(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let zs = random_disk(20, 2.0, sp.seed());
    let mut grid = Vec::new();
    for &lam in &LAMBDAS {
        for &z in &zs {
            grid.push((lam, z));
        }
    }
    // after y = s / sqrt(alpha) the modulation frequency is sqrt(2) q / sqrt(alpha)
    let order = |lam: f64, z: Complex64| {
        let alpha: f64 = (1.0 + lam) / (1.0 - lam);
        sp.order(0, SQRT_2 * z.im / alpha.sqrt())
    };
    let rules = build_rules(grid.iter().map(|&(lam, z)| order(lam, z)))?;
    grid.par_iter()
        .map(|&(lam, z)| {
            check_diag_hvh2(z, lam, sp.trunc(default_series_order(lam))?, &rules[&order(lam, z)])
        })
        .collect()
}

fn wong(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(12);
    let mut grid = Vec::new();
    for j in 0..=max {
        for k in 0..=max - j {
            for variant in [WongVariant::Raise, WongVariant::Lower] {
                for p in int_range(-2, 2) {
                    for q in int_range(-2, 2) {
                        grid.push((j, k, variant, PhasePoint { p, q }));
                    }
                }
            }
        }
    }
    let rules = build_rules(grid.iter().map(|&(j, k, _, pt)| sp.order(2 * j + k, pt.q)))?;
    Ok(grid
        .par_iter()
        .map(|&(j, k, v, pt)| check_wong_laguerre(j, k, pt, v, &rules[&sp.order(2 * j + k, pt.q)]))
        .collect())
}

fn orthogonality(sp: &SuiteParams, diagonal: bool) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(8);
    let rule2d = TensorRule::gauss_hermite(sp.quad_order.unwrap_or(24), 1.0)?;
    let gram = complex_hermite_gram(max, &rule2d);
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            for m2 in 0..=max {
                for n2 in 0..=max {
                    if ((m, n) == (m2, n2)) == diagonal {
                        out.push(orthogonality_from_gram(&gram, max, (m, n), (m2, n2), None));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn phase_rule(sp: &SuiteParams) -> Result<TensorRule> {
    TensorRule::gauss_hermite(sp.quad_order.unwrap_or(160), 0.5)
}

fn moyal(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(3);
    let side = max + 1;
    let rule2d = phase_rule(sp)?;
    let grids = hermite_transform_grids(max, false, &rule2d)?;
    let line = QuadratureRule::gauss_hermite(default_rule_order(4 * max, 0.0))?;
    let h: Vec<WindowFunction> = (0..side).map(WindowFunction::hermite).collect();
    let mut gram = vec![Complex64::new(0.0, 0.0); side * side];
    for a in 0..side {
        for b in 0..side {
            gram[a * side + b] = inner_product(&h[a], &h[b], &line);
        }
    }
    let mut tuples = Vec::new();
    for f in 0..side {
        for g in 0..side {
            for phi in 0..side {
                for psi in 0..side {
                    tuples.push((f, g, phi, psi));
                }
            }
        }
    }
    Ok(tuples
        .par_iter()
        .map(|&(f, g, phi, psi)| {
            let lhs = phase_inner(&grids[f * side + g], &grids[phi * side + psi], &rule2d);
            let rhs = gram[f * side + phi] * gram[psi * side + g];
            IdentityCheck::new(
                "moyal",
                params!("f" => f, "g" => g, "phi" => phi, "psi" => psi),
                lhs,
                rhs,
                TOL_QUADRATURE_2D,
            )
        })
        .collect())
}

fn norm_transfer(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(6);
    let side = max + 1;
    let rule2d = phase_rule(sp)?;
    let grids = hermite_transform_grids(max, false, &rule2d)?;
    let mut out = Vec::new();
    for m in 0..side {
        for n in 0..side {
            let g = &grids[m * side + n];
            let lhs = phase_inner(g, g, &rule2d);
            let rhs = hermite_norm_sq(m)? * hermite_norm_sq(n)?;
            out.push(IdentityCheck::new(
                "norm-transfer",
                params!("m" => m, "n" => n),
                lhs,
                Complex64::new(rhs, 0.0),
                1e-6,
            ));
        }
    }
    Ok(out)
}

fn route_laguerre(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(20);
    let zs = random_disk(50, 5.0, sp.seed());
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            for &z in &zs {
                out.push(IdentityCheck::new(
                    "route-laguerre",
                    params!("m" => m, "n" => n, "z_re" => z.re, "z_im" => z.im),
                    complex_hermite_eval(m, n, z),
                    complex_hermite_via_laguerre(m, n, z),
                    1e-10,
                ));
            }
        }
    }
    Ok(out)
}

fn route_hermite_exact(sp: &SuiteParams) -> Result<Vec<IdentityCheck>> {
    let max = sp.max(30);
    let polys: Vec<ExactPolynomial> = (0..=max).map(hermite_exact).collect();
    let xs: Vec<f64> = (-20..=20).map(|k| f64::from(k) * 0.5).collect();
    let mut grid = Vec::new();
    for n in 0..=max {
        for &x in &xs {
            grid.push((n, x));
        }
    }
    grid.par_iter()
        .map(|&(n, x)| {
            let exact = polys[n]
                .eval_f64_exact(x)
                .ok_or_else(|| Error::Overflow { what: format!("H_{n}({x})") })?;
            Ok(IdentityCheck::real(
                "route-hermite-exact",
                params!("n" => n, "x" => x),
                hermite_eval(n, x)?,
                exact,
                1e-12,
            ))
        })
        .collect()
}
