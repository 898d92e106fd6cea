//! Verification reports and their serializations.
//!
//! Machine formats print every real with 17 significant digits so that
//! parsing reproduces the binary value; non-finite values become `null` in
//! JSON and `NaN`/`inf` in CSV. Plain tables use 6 significant digits.

use chrono::{SecondsFormat, Utc};
use num_complex::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::identity::{IdentityCheck, ParamValue, Params};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub worst_abs_err: f64,
    pub worst_params: Params,
}

/// Per-identity rollup inside a report.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentitySummary {
    pub id: String,
    pub total: usize,
    pub passed: usize,
    pub worst_abs_err: f64,
    pub worst_rel_err: f64,
    pub worst_params: Params,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub timestamp: String,
    pub checks: Vec<IdentityCheck>,
    pub summary: Summary,
}

fn summarize<'a>(checks: impl Iterator<Item = &'a IdentityCheck>) -> (usize, usize, f64, f64, Params) {
    let mut total = 0;
    let mut passed = 0;
    let mut worst_abs: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    let mut worst_params = Params::new();
    for ch in checks {
        total += 1;
        passed += usize::from(ch.passed);
        // NaN errors count as worst
        if ch.abs_err > worst_abs || (ch.abs_err.is_nan() && !worst_abs.is_nan()) || total == 1 {
            worst_abs = ch.abs_err;
            worst_params = ch.params.clone();
        }
        if ch.rel_err > worst_rel || ch.rel_err.is_nan() {
            worst_rel = ch.rel_err;
        }
    }
    (total, passed, worst_abs, worst_rel, worst_params)
}

impl VerificationReport {
    pub fn new(suite: &str, checks: Vec<IdentityCheck>) -> Self {
        let (total, passed, worst_abs_err, _, worst_params) = summarize(checks.iter());
        VerificationReport {
            suite: suite.to_string(),
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            checks,
            summary: Summary {
                total,
                passed,
                worst_abs_err,
                worst_params,
            },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Rollups in order of first appearance.
    pub fn identities(&self) -> Vec<IdentitySummary> {
        let mut ids: Vec<&str> = Vec::new();
        for ch in &self.checks {
            if !ids.contains(&ch.id.as_str()) {
                ids.push(&ch.id);
            }
        }
        ids.into_iter()
            .map(|id| {
                let sel = || self.checks.iter().filter(move |c| c.id == id);
                let (total, passed, worst_abs_err, worst_rel_err, worst_params) = summarize(sel());
                let tol = sel().map(|c| c.tol).fold(0.0, f64::max);
                IdentitySummary {
                    id: id.to_string(),
                    total,
                    passed,
                    worst_abs_err,
                    worst_rel_err,
                    worst_params,
                    tol,
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonReport(self)).expect("report serialization is infallible")
    }

    /// One row per check: `id, params, lhs_re, lhs_im, rhs_re, rhs_im, abs_err, rel_err, tol, passed`;
    /// params are `key=value` joined by `;`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Domain(format!("csv output failed: {e}"));
        w.write_record([
            "id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "tol", "passed",
        ])
        .map_err(io)?;
        for ch in &self.checks {
            w.write_record([
                ch.id.clone(),
                params_text(&ch.params),
                fmt17(ch.lhs.re),
                fmt17(ch.lhs.im),
                fmt17(ch.rhs.re),
                fmt17(ch.rhs.im),
                fmt17(ch.abs_err),
                fmt17(ch.rel_err),
                fmt17(ch.tol),
                ch.passed.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Domain(format!("csv output failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Summary, per-identity rollups and every failing check.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {}: {}/{} passed, worst abs_err {} at {}\n",
            self.suite,
            self.summary.passed,
            self.summary.total,
            fmt_g6(self.summary.worst_abs_err),
            params_text(&self.summary.worst_params)
        ));
        let rows: Vec<Vec<String>> = self
            .identities()
            .iter()
            .map(|s| {
                vec![
                    s.id.clone(),
                    format!("{}/{}", s.passed, s.total),
                    fmt_g6(s.worst_abs_err),
                    fmt_g6(s.worst_rel_err),
                    fmt_g6(s.tol),
                    params_text(&s.worst_params),
                ]
            })
            .collect();
        out.push_str(&plain_table(
            &["identity", "passed", "worst_abs", "worst_rel", "tol", "worst_params"],
            &rows,
        ));
        let failures: Vec<Vec<String>> = self
            .failures()
            .map(|c| {
                vec![
                    c.id.clone(),
                    params_text(&c.params),
                    fmt_complex_g6(c.lhs),
                    fmt_complex_g6(c.rhs),
                    fmt_g6(c.abs_err),
                    fmt_g6(c.tol),
                ]
            })
            .collect();
        if !failures.is_empty() {
            out.push_str("failures:\n");
            out.push_str(&plain_table(&["identity", "params", "lhs", "rhs", "abs_err", "tol"], &failures));
        }
        out
    }
}

pub fn params_text(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| match v {
            ParamValue::Real(x) => format!("{k}={}", fmt_short(*x)),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Shortest round-trip form, for parameters.
fn fmt_short(x: f64) -> String {
    format!("{x}")
}

/// 17 significant digits in exponent form; `NaN`, `inf`, `-inf` otherwise.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// `%g`-style formatting with 6 significant digits.
pub fn fmt_g6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can carry into the next decade
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) { exp + 1 } else { exp };
    if !(-4..6).contains(&exp) {
        let s = format!("{x:.5e}");
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = trim_zeros(mant);
        let e: i32 = e.parse().unwrap_or(0);
        format!("{mant}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` in 6 significant digits, or just `a` when the imaginary part is 0.
pub fn fmt_complex_g6(z: Complex64) -> String {
    if z.im == 0.0 {
        return fmt_g6(z.re);
    }
    let im = fmt_g6(z.im.abs());
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_g6(z.re))
}

/// Left-aligned, space-padded columns.
pub fn plain_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, cell) in r.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.len());
            }
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let s: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        format!("{}\n", s.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// A real serialized as a JSON number with 17 significant digits, `null` if not finite.
pub(crate) struct Num(pub(crate) f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(fmt17(self.0))
                .map_err(serde::ser::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

struct JsonParams<'a>(&'a Params);

impl Serialize for JsonParams<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            match v {
                ParamValue::Int(i) => map.serialize_entry(k, i)?,
                ParamValue::Real(x) => map.serialize_entry(k, &Num(*x))?,
                ParamValue::Text(t) => map.serialize_entry(k, t)?,
            }
        }
        map.end()
    }
}

#[derive(Serialize)]
struct JsonComplex {
    re: Num,
    im: Num,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        JsonComplex { re: Num(z.re), im: Num(z.im) }
    }
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    id: &'a str,
    params: JsonParams<'a>,
    lhs: JsonComplex,
    rhs: JsonComplex,
    abs_err: Num,
    rel_err: Num,
    tol: Num,
    passed: bool,
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    total: usize,
    passed: usize,
    worst_abs_err: Num,
    worst_params: JsonParams<'a>,
}

struct JsonReport<'a>(&'a VerificationReport);

impl Serialize for JsonReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("suite", &r.suite)?;
        map.serialize_entry("timestamp", &r.timestamp)?;
        let checks: Vec<JsonCheck> = r
            .checks
            .iter()
            .map(|c| JsonCheck {
                id: &c.id,
                params: JsonParams(&c.params),
                lhs: c.lhs.into(),
                rhs: c.rhs.into(),
                abs_err: Num(c.abs_err),
                rel_err: Num(c.rel_err),
                tol: Num(c.tol),
                passed: c.passed,
            })
            .collect();
        map.serialize_entry("checks", &checks)?;
        map.serialize_entry(
            "summary",
            &JsonSummary {
                total: r.summary.total,
                passed: r.summary.passed,
                worst_abs_err: Num(r.summary.worst_abs_err),
                worst_params: JsonParams(&r.summary.worst_params),
            },
        )?;
        map.end()
    }
}
