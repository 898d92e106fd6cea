//! Hermite functions `h_n(x) = exp(-x^2/2) H_n(x)` and their normalized form
//! `e_n = h_n / sqrt(2^n n! sqrt(pi))`, an orthonormal basis of `L^2(R)`.

use serde::{Deserialize, Serialize};

use super::hermite::{hermite_eval, hermite_eval_log, hermite_norm_sq, hermite_norm_sq_ln};

/// Above this degree the direct product `exp(-x^2/2) H_n(x)` is no longer
/// guaranteed representable (`2^151 151! sqrt(pi)` already overflows), so the
/// log-scaled recurrence is used instead.
pub const DIRECT_MAX_DEGREE: usize = 150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteFunctionSpec {
    pub n: usize,
    /// `false` selects `h_n`, `true` selects `e_n`.
    pub normalized: bool,
    /// Return sign and log-magnitude instead of the value.
    pub log_scale: bool,
}

impl HermiteFunctionSpec {
    pub fn h(n: usize) -> Self {
        HermiteFunctionSpec {
            n,
            normalized: false,
            log_scale: false,
        }
    }

    pub fn e(n: usize) -> Self {
        HermiteFunctionSpec {
            n,
            normalized: true,
            log_scale: false,
        }
    }

    pub fn with_log_scale(mut self) -> Self {
        self.log_scale = true;
        self
    }

    /// Squared `L^2` norm of the selected function: 1 for `e_n`, `2^n n! sqrt(pi)` for `h_n`.
    pub fn norm_sq(&self) -> f64 {
        if self.normalized {
            1.0
        } else {
            hermite_norm_sq(self.n).unwrap_or(f64::INFINITY)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HermiteFnValue {
    Direct {
        value: f64,
        /// The exact value is nonzero but below the normal `f64` range and was flushed to 0.
        underflow: bool,
        /// The exact value exceeds `f64::MAX`; `value` is infinite.
        overflow: bool,
    },
    LogScaled {
        /// -1, 0 or +1
        sign: f64,
        ln_abs: f64,
    },
}

impl HermiteFnValue {
    pub fn value(&self) -> f64 {
        match *self {
            HermiteFnValue::Direct { value, .. } => value,
            HermiteFnValue::LogScaled { sign, ln_abs } => {
                if sign == 0.0 {
                    0.0
                } else {
                    sign * ln_abs.exp()
                }
            }
        }
    }
}

fn log_route(spec: HermiteFunctionSpec, x: f64) -> (f64, f64) {
    let (sign, ln_h) = hermite_eval_log(spec.n, x);
    let mut ln_abs = ln_h - 0.5 * x * x;
    if spec.normalized {
        ln_abs -= 0.5 * hermite_norm_sq_ln(spec.n);
    }
    (sign, ln_abs)
}

fn flush(value: f64) -> HermiteFnValue {
    let overflow = value.is_infinite();
    let underflow = value != 0.0 && value.abs() < f64::MIN_POSITIVE;
    HermiteFnValue::Direct {
        value: if underflow { 0.0 } else { value },
        underflow,
        overflow,
    }
}

pub fn hermite_fn_eval(spec: HermiteFunctionSpec, x: f64) -> HermiteFnValue {
    if spec.log_scale {
        let (sign, ln_abs) = log_route(spec, x);
        return HermiteFnValue::LogScaled { sign, ln_abs };
    }
    if spec.n <= DIRECT_MAX_DEGREE {
        let envelope = (-0.5 * x * x).exp();
        if envelope >= f64::MIN_POSITIVE {
            if let Ok(h) = hermite_eval(spec.n, x) {
                let mut v = envelope * h;
                if spec.normalized {
                    // finite for n <= DIRECT_MAX_DEGREE
                    v /= hermite_norm_sq(spec.n).map(f64::sqrt).unwrap_or(f64::INFINITY);
                }
                return flush(v);
            }
        }
    }
    let (sign, ln_abs) = log_route(spec, x);
    if sign == 0.0 {
        return flush(0.0);
    }
    if ln_abs < f64::MIN_POSITIVE.ln() {
        return HermiteFnValue::Direct {
            value: 0.0,
            underflow: true,
            overflow: false,
        };
    }
    flush(sign * ln_abs.exp())
}

/// Convenience: the plain value of `h_n(x)` or `e_n(x)`.
pub fn hermite_fn(n: usize, normalized: bool, x: f64) -> f64 {
    hermite_fn_eval(
        HermiteFunctionSpec {
            n,
            normalized,
            log_scale: false,
        },
        x,
    )
    .value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(hermite_fn(0, false, 0.0), 1.0);
        assert_eq!(hermite_fn(1, false, 0.0), 0.0);
        assert_eq!(hermite_fn(1, true, 0.0), 0.0);
        let pi_quarter = std::f64::consts::PI.powf(-0.25);
        assert!((hermite_fn(0, true, 0.0) - pi_quarter).abs() < 1e-16);
    }

    #[test]
    fn log_scale_agrees_with_direct_route() {
        for n in [0, 1, 2, 9, 40, 99, 150] {
            for &x in &[-20.0, -3.3, -0.01, 0.5, 1.7, 8.0, 30.0] {
                for normalized in [false, true] {
                    let spec = HermiteFunctionSpec {
                        n,
                        normalized,
                        log_scale: false,
                    };
                    let direct = hermite_fn_eval(spec, x);
                    let HermiteFnValue::Direct {
                        value,
                        underflow: false,
                        overflow: false,
                    } = direct
                    else {
                        continue;
                    };
                    let logged = hermite_fn_eval(spec.with_log_scale(), x).value();
                    assert!(
                        (logged - value).abs() <= 1e-12 * value.abs(),
                        "n={n} x={x} normalized={normalized}: {logged} vs {value}"
                    );
                }
            }
        }
    }

    #[test]
    fn direct_route_never_overflows_up_to_threshold() {
        // below the envelope underflow point every H_n stays finite
        for n in 0..=DIRECT_MAX_DEGREE {
            for i in 0..=75 {
                let x = -37.5 + i as f64;
                assert!(hermite_eval(n, x).is_ok(), "n={n} x={x}");
            }
        }
        assert!(hermite_norm_sq(DIRECT_MAX_DEGREE).is_ok());
        assert!(hermite_norm_sq(DIRECT_MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn high_degree_uses_log_route() {
        // e_n stays bounded by roughly pi^{-1/4} for every n
        let v = hermite_fn(400, true, 3.0);
        assert!(v.is_finite() && v.abs() < 1.0);
        let near_turning_point = hermite_fn(400, true, (2.0f64 * 400.0 + 1.0).sqrt() - 1.0);
        assert!(near_turning_point.abs() > 1e-3);
    }

    #[test]
    fn underflow_flag() {
        let v = hermite_fn_eval(HermiteFunctionSpec::h(0), 40.0);
        assert_eq!(
            v,
            HermiteFnValue::Direct {
                value: 0.0,
                underflow: true,
                overflow: false
            }
        );
        let v = hermite_fn_eval(HermiteFunctionSpec::h(1), 0.0);
        assert!(matches!(
            v,
            HermiteFnValue::Direct {
                underflow: false,
                ..
            }
        ));
    }
}
