#ifndef HERMITE_WIGNER_H
#define HERMITE_WIGNER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HwStatus {
  HW_STATUS_OK = 0,
  HW_STATUS_NULL_POINTER = 1,
  HW_STATUS_DOMAIN = 2,
  HW_STATUS_OVERFLOW = 3,
  HW_STATUS_RULE_CONSTRUCTION = 4,
  HW_STATUS_UNKNOWN_SUITE = 5,
  HW_STATUS_INVALID_ARGUMENT = 6,
  HW_STATUS_BUFFER_TOO_SMALL = 7,
  HW_STATUS_PANIC = 8,
} HwStatus;

// Gauss-Hermite rule for `int exp(-y^2) f(y) dy`.
typedef struct HwQuadratureRule HwQuadratureRule;

// Result of a verification suite.
typedef struct HwReport HwReport;

typedef struct HwComplex {
  double re;
  double im;
} HwComplex;

// Overrides for [`hw_run_suite`]. A field left at its "default" value
// (non-positive `tol`, zero orders, negative `max_index`, zero `use_seed`)
// keeps the suite's own choice.
typedef struct HwSuiteParams {
  double tol;
  uint32_t quad_order;
  uint32_t trunc_order;
  int32_t max_index;
  int use_seed;
  uint64_t seed;
} HwSuiteParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *hw_last_error(void);

// Library version as a static NUL-terminated string.
const char *hw_version(void);

// `H_n(x)`.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum HwStatus hw_hermite_eval(uint32_t n, double x, double *out);

// `h_n(x)`, or `e_n(x)` when `normalized` is nonzero.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum HwStatus hw_hermite_fn(uint32_t n, int normalized, double x, double *out);

// `2^n n! sqrt(pi)`.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum HwStatus hw_hermite_norm_sq(uint32_t n, double *out);

// `L_n^(alpha)(x)`.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum HwStatus hw_laguerre_eval(uint32_t n, double alpha, double x, double *out);

// `H_{m,n}(z, zbar)` by recurrence.
//
// # Safety
// `out` must be null or valid for writing one `HwComplex`.
enum HwStatus hw_complex_hermite_eval(uint32_t m,
                                      uint32_t n,
                                      struct HwComplex z,
                                      struct HwComplex *out);

// `H_{m,n}(z, zbar)` through its Laguerre form.
//
// # Safety
// `out` must be null or valid for writing one `HwComplex`.
enum HwStatus hw_complex_hermite_via_laguerre(uint32_t m,
                                              uint32_t n,
                                              struct HwComplex z,
                                              struct HwComplex *out);

// Closed form of `V(h_m, h_n)(p, q)`.
//
// # Safety
// `out` must be null or valid for writing one `HwComplex`.
enum HwStatus hw_fwt_hermite_closed(uint32_t m,
                                    uint32_t n,
                                    double p,
                                    double q,
                                    struct HwComplex *out);

// Quadrature value of `V(h_m, h_n)(p, q)` (or of `V(e_m, e_n)` when
// `normalized` is nonzero) with the given rule.
//
// # Safety
// `rule` must be null or a live handle from [`hw_rule_gauss_hermite`];
// `out` must be null or valid for writing one `HwComplex`.
enum HwStatus hw_fwt_quadrature(const struct HwQuadratureRule *rule,
                                uint32_t m,
                                uint32_t n,
                                int normalized,
                                double p,
                                double q,
                                struct HwComplex *out);

// `g(x, y | lambda)`; `|lambda| >= 1` is a domain error.
//
// # Safety
// `out` must be null or valid for writing one `double`.
enum HwStatus hw_mehler_kernel(double x, double y, double lambda, double *out);

// Builds a Gauss-Hermite rule with `order` nodes.
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum HwStatus hw_rule_gauss_hermite(uint32_t order, struct HwQuadratureRule **out);

// Node count of `rule`, or 0 for a null handle.
//
// # Safety
// `rule` must be null or a live handle.
size_t hw_rule_order(const struct HwQuadratureRule *rule);

// Copies the nodes of `rule` into `buf`, which holds `len` doubles.
//
// # Safety
// `rule` must be null or a live handle; `buf` must be null or valid for `len` writes.
enum HwStatus hw_rule_nodes(const struct HwQuadratureRule *rule, double *buf, size_t len);

// Copies the weights (for the weight `exp(-y^2)`) of `rule` into `buf`.
//
// # Safety
// `rule` must be null or a live handle; `buf` must be null or valid for `len` writes.
enum HwStatus hw_rule_weights(const struct HwQuadratureRule *rule, double *buf, size_t len);

// # Safety
// `rule` must be null or a handle not yet freed.
void hw_rule_free(struct HwQuadratureRule *rule);

// Runs a registered suite. `params` may be null for the suite defaults.
//
// # Safety
// `suite_id` must be null or a NUL-terminated string; `params` null or valid
// for a read; `out` null or valid for writing one pointer.
enum HwStatus hw_run_suite(const char *suite_id,
                           const struct HwSuiteParams *params,
                           struct HwReport **out);

// # Safety
// `report` must be null or a live handle.
size_t hw_report_total(const struct HwReport *report);

// # Safety
// `report` must be null or a live handle.
size_t hw_report_passed(const struct HwReport *report);

// Largest absolute error in the report; NaN for a null handle.
//
// # Safety
// `report` must be null or a live handle.
double hw_report_worst_abs_err(const struct HwReport *report);

// JSON rendering of the report; release it with [`hw_string_free`].
//
// # Safety
// `report` must be null or a live handle; `out` null or valid for writing one pointer.
enum HwStatus hw_report_to_json(const struct HwReport *report, char **out);

// # Safety
// `report` must be null or a handle not yet freed.
void hw_report_free(struct HwReport *report);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string from [`hw_report_to_json`] not yet freed.
void hw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMITE_WIGNER_H */
