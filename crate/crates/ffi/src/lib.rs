//! C ABI over `hermite-wigner`.
//!
//! Every fallible function returns an [`HwStatus`] and writes its result
//! through an out-pointer. On failure the thread-local message returned by
//! [`hw_last_error`] describes the cause. Handles are opaque and must be
//! released with their matching `*_free` function.

use hermite_wigner::identity::{run_suite, SuiteParams};
use hermite_wigner::quadrature::QuadratureRule;
use hermite_wigner::report::VerificationReport;
use hermite_wigner::special;
use hermite_wigner::wigner::{self, PhasePoint, WindowFunction};
use hermite_wigner::Error;
use libc::{c_char, c_int};
use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HwStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Overflow = 3,
    RuleConstruction = 4,
    UnknownSuite = 5,
    InvalidArgument = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HwComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HwComplex {
    fn from(z: Complex64) -> Self {
        HwComplex { re: z.re, im: z.im }
    }
}

impl From<HwComplex> for Complex64 {
    fn from(z: HwComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Overrides for [`hw_run_suite`]. A field left at its "default" value
/// (non-positive `tol`, zero orders, negative `max_index`, zero `use_seed`)
/// keeps the suite's own choice.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct HwSuiteParams {
    pub tol: f64,
    pub quad_order: u32,
    pub trunc_order: u32,
    pub max_index: i32,
    pub use_seed: c_int,
    pub seed: u64,
}

/// Gauss-Hermite rule for `int exp(-y^2) f(y) dy`.
pub struct HwQuadratureRule(QuadratureRule);

/// Result of a verification suite.
pub struct HwReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> HwStatus {
    match e {
        Error::Overflow { .. } => HwStatus::Overflow,
        Error::Domain(_) => HwStatus::Domain,
        Error::RuleConstruction(_) => HwStatus::RuleConstruction,
        Error::UnknownSuite(_) => HwStatus::UnknownSuite,
    }
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard<F>(f: F) -> HwStatus
where
    F: FnOnce() -> Result<(), (HwStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HwStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HwStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HwStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (HwStatus, String) {
    (HwStatus::NullPointer, format!("{name} is null"))
}

fn finite(name: &str, x: f64) -> Result<(), (HwStatus, String)> {
    if x.is_finite() {
        Ok(())
    } else {
        Err((HwStatus::InvalidArgument, format!("{name} must be finite")))
    }
}

/// Writes `v` through `out` after checking it is non-null.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn put<T>(out: *mut T, v: T) -> Result<(), (HwStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `H_n(x)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn hw_hermite_eval(n: u32, x: f64, out: *mut f64) -> HwStatus {
    guard(|| {
        finite("x", x)?;
        let v = special::hermite_eval(n as usize, x).map_err(lib_err)?;
        put(out, v)
    })
}

/// `h_n(x)`, or `e_n(x)` when `normalized` is nonzero.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn hw_hermite_fn(n: u32, normalized: c_int, x: f64, out: *mut f64) -> HwStatus {
    guard(|| {
        finite("x", x)?;
        put(out, special::hermite_fn(n as usize, normalized != 0, x))
    })
}

/// `2^n n! sqrt(pi)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn hw_hermite_norm_sq(n: u32, out: *mut f64) -> HwStatus {
    guard(|| put(out, special::hermite_norm_sq(n as usize).map_err(lib_err)?))
}

/// `L_n^(alpha)(x)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn hw_laguerre_eval(n: u32, alpha: f64, x: f64, out: *mut f64) -> HwStatus {
    guard(|| {
        finite("alpha", alpha)?;
        finite("x", x)?;
        put(out, special::laguerre_eval(n as usize, alpha, x))
    })
}

fn finite_z(z: HwComplex) -> Result<Complex64, (HwStatus, String)> {
    finite("z.re", z.re)?;
    finite("z.im", z.im)?;
    Ok(z.into())
}

/// `H_{m,n}(z, zbar)` by recurrence.
///
/// # Safety
/// `out` must be null or valid for writing one `HwComplex`.
#[no_mangle]
pub unsafe extern "C" fn hw_complex_hermite_eval(m: u32, n: u32, z: HwComplex, out: *mut HwComplex) -> HwStatus {
    guard(|| {
        let z = finite_z(z)?;
        put(out, special::complex_hermite_eval(m as usize, n as usize, z).into())
    })
}

/// `H_{m,n}(z, zbar)` through its Laguerre form.
///
/// # Safety
/// `out` must be null or valid for writing one `HwComplex`.
#[no_mangle]
pub unsafe extern "C" fn hw_complex_hermite_via_laguerre(
    m: u32,
    n: u32,
    z: HwComplex,
    out: *mut HwComplex,
) -> HwStatus {
    guard(|| {
        let z = finite_z(z)?;
        put(out, special::complex_hermite_via_laguerre(m as usize, n as usize, z).into())
    })
}

fn phase(p: f64, q: f64) -> Result<PhasePoint, (HwStatus, String)> {
    PhasePoint::new(p, q).map_err(|e| (HwStatus::InvalidArgument, e.to_string()))
}

/// Closed form of `V(h_m, h_n)(p, q)`.
///
/// # Safety
/// `out` must be null or valid for writing one `HwComplex`.
#[no_mangle]
pub unsafe extern "C" fn hw_fwt_hermite_closed(m: u32, n: u32, p: f64, q: f64, out: *mut HwComplex) -> HwStatus {
    guard(|| {
        let pt = phase(p, q)?;
        put(out, wigner::fwt_hermite_closed(m as usize, n as usize, pt).into())
    })
}

/// Quadrature value of `V(h_m, h_n)(p, q)` (or of `V(e_m, e_n)` when
/// `normalized` is nonzero) with the given rule.
///
/// # Safety
/// `rule` must be null or a live handle from [`hw_rule_gauss_hermite`];
/// `out` must be null or valid for writing one `HwComplex`.
#[no_mangle]
pub unsafe extern "C" fn hw_fwt_quadrature(
    rule: *const HwQuadratureRule,
    m: u32,
    n: u32,
    normalized: c_int,
    p: f64,
    q: f64,
    out: *mut HwComplex,
) -> HwStatus {
    guard(|| {
        let rule = rule.as_ref().ok_or_else(|| null("rule"))?;
        let pt = phase(p, q)?;
        let w = |k: u32| {
            if normalized != 0 {
                WindowFunction::hermite_normalized(k as usize)
            } else {
                WindowFunction::hermite(k as usize)
            }
        };
        put(out, wigner::fwt_quadrature(&w(m), &w(n), pt, &rule.0).into())
    })
}

/// `g(x, y | lambda)`; `|lambda| >= 1` is a domain error.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn hw_mehler_kernel(x: f64, y: f64, lambda: f64, out: *mut f64) -> HwStatus {
    guard(|| {
        finite("x", x)?;
        finite("y", y)?;
        let v = hermite_wigner::identity::mehler_kernel(x, y, lambda).map_err(lib_err)?;
        put(out, v)
    })
}

/// Builds a Gauss-Hermite rule with `order` nodes.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hw_rule_gauss_hermite(order: u32, out: *mut *mut HwQuadratureRule) -> HwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let rule = QuadratureRule::gauss_hermite(order as usize).map_err(lib_err)?;
        out.write(Box::into_raw(Box::new(HwQuadratureRule(rule))));
        Ok(())
    })
}

/// Node count of `rule`, or 0 for a null handle.
///
/// # Safety
/// `rule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_rule_order(rule: *const HwQuadratureRule) -> usize {
    rule.as_ref().map_or(0, |r| r.0.order())
}

unsafe fn copy_out(src: &[f64], buf: *mut f64, len: usize) -> Result<(), (HwStatus, String)> {
    if buf.is_null() {
        return Err(null("buf"));
    }
    if len < src.len() {
        return Err((HwStatus::BufferTooSmall, format!("need {} slots, got {len}", src.len())));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Copies the nodes of `rule` into `buf`, which holds `len` doubles.
///
/// # Safety
/// `rule` must be null or a live handle; `buf` must be null or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hw_rule_nodes(rule: *const HwQuadratureRule, buf: *mut f64, len: usize) -> HwStatus {
    guard(|| copy_out(rule.as_ref().ok_or_else(|| null("rule"))?.0.nodes(), buf, len))
}

/// Copies the weights (for the weight `exp(-y^2)`) of `rule` into `buf`.
///
/// # Safety
/// `rule` must be null or a live handle; `buf` must be null or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hw_rule_weights(rule: *const HwQuadratureRule, buf: *mut f64, len: usize) -> HwStatus {
    guard(|| copy_out(rule.as_ref().ok_or_else(|| null("rule"))?.0.weights(), buf, len))
}

/// # Safety
/// `rule` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hw_rule_free(rule: *mut HwQuadratureRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// Runs a registered suite. `params` may be null for the suite defaults.
///
/// # Safety
/// `suite_id` must be null or a NUL-terminated string; `params` null or valid
/// for a read; `out` null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hw_run_suite(
    suite_id: *const c_char,
    params: *const HwSuiteParams,
    out: *mut *mut HwReport,
) -> HwStatus {
    guard(|| {
        if suite_id.is_null() {
            return Err(null("suite_id"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let id = CStr::from_ptr(suite_id)
            .to_str()
            .map_err(|_| (HwStatus::InvalidArgument, "suite_id is not UTF-8".to_string()))?;
        let sp = match params.as_ref() {
            None => SuiteParams::default(),
            Some(p) => SuiteParams {
                tol: (p.tol > 0.0).then_some(p.tol),
                quad_order: (p.quad_order > 0).then_some(p.quad_order as usize),
                trunc_order: (p.trunc_order > 0).then_some(p.trunc_order as usize),
                max_index: usize::try_from(p.max_index).ok(),
                seed: (p.use_seed != 0).then_some(p.seed),
            },
        };
        let report = run_suite(id, &sp).map_err(lib_err)?;
        out.write(Box::into_raw(Box::new(HwReport(report))));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_report_total(report: *const HwReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.summary.total)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_report_passed(report: *const HwReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.summary.passed)
}

/// Largest absolute error in the report; NaN for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_report_worst_abs_err(report: *const HwReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.0.summary.worst_abs_err)
}

/// JSON rendering of the report; release it with [`hw_string_free`].
///
/// # Safety
/// `report` must be null or a live handle; `out` null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hw_report_to_json(report: *const HwReport, out: *mut *mut c_char) -> HwStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let s = CString::new(r.0.to_json()).map_err(|e| (HwStatus::InvalidArgument, e.to_string()))?;
        put(out, s.into_raw())
    })
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hw_report_free(report: *mut HwReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from [`hw_report_to_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
