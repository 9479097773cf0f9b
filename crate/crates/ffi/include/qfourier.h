#ifndef QFOURIER_H
#define QFOURIER_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QfStatus {
  QF_STATUS_OK = 0,
  QF_STATUS_NULL_POINTER = 1,
  QF_STATUS_INVALID_INPUT = 2,
  QF_STATUS_DOMAIN = 3,
  QF_STATUS_POLE = 4,
  QF_STATUS_NON_FINITE = 5,
  QF_STATUS_CONVERGENCE = 6,
  QF_STATUS_DEGENERATE = 7,
  QF_STATUS_BOUNDARY_CONVERGENCE = 8,
  QF_STATUS_QUADRATURE = 9,
  QF_STATUS_FALLBACK_REQUIRED = 10,
  QF_STATUS_INVALID_WINDOW = 11,
  QF_STATUS_OUT_OF_RANGE = 12,
  QF_STATUS_PANIC = 13,
  QF_STATUS_OTHER = 14,
} QfStatus;

/**
 * Opaque function handle.
 */
typedef struct QfFunction QfFunction;

/**
 * Opaque transform surface handle.
 */
typedef struct QfSurface QfSurface;

typedef struct QfComplex {
  double re;
  double im;
} QfComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Unit indicator on `[a, b]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_function_indicator(double a, double b, struct QfFunction **out);

/**
 * Power-law window `(lambda/x)^beta` on `[a, b]`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_function_powerlaw(double a,
                                   double b,
                                   double beta,
                                   double lambda,
                                   struct QfFunction **out);

/**
 * Normalized power-law window with `beta = 1/(q-1)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_function_hilhorst(double a, double b, double q, struct QfFunction **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_function_qgaussian(double q, double width, double radius, struct QfFunction **out);

/**
 * Piecewise-linear function through `n` samples. The arrays are copied.
 *
 * # Safety
 * `xs` and `ys` must each point at `n` readable doubles; `out` must be valid for writes.
 */
enum QfStatus qf_function_tabulated(const double *xs,
                                    const double *ys,
                                    size_t n,
                                    struct QfFunction **out);

/**
 * Release a function handle. Null is ignored.
 *
 * # Safety
 * `f` must come from a `qf_function_*` constructor and not be freed twice.
 */
void qf_function_free(struct QfFunction *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be valid for writes.
 */
enum QfStatus qf_l1_norm(const struct QfFunction *f, double *out);

/**
 * F(k, q) by quadrature. `rel_tol <= 0` selects the default tolerance.
 * `err` may be null.
 *
 * # Safety
 * `f` must be a live handle; `value` must be valid for writes; `err` null or valid.
 */
enum QfStatus qf_transform_point(const struct QfFunction *f,
                                 double q,
                                 double k,
                                 double rel_tol,
                                 struct QfComplex *value,
                                 double *err);

/**
 * Transform on the `nq x nk` grid.
 *
 * # Safety
 * `f` must be a live handle; `k` and `q` must point at `nk` and `nq` doubles;
 * `out` must be valid for writes.
 */
enum QfStatus qf_surface_new(const struct QfFunction *f,
                             const double *k,
                             size_t nk,
                             const double *q,
                             size_t nq,
                             double rel_tol,
                             struct QfSurface **out);

/**
 * Value and error estimate at row `iq`, column `ik`. `err` may be null.
 *
 * # Safety
 * `s` must be a live handle; `value` must be valid for writes; `err` null or valid.
 */
enum QfStatus qf_surface_value(const struct QfSurface *s,
                               size_t iq,
                               size_t ik,
                               struct QfComplex *value,
                               double *err);

/**
 * # Safety
 * `s` must be a live handle; `nq` and `nk` must be valid for writes.
 */
enum QfStatus qf_surface_dims(const struct QfSurface *s, size_t *nq, size_t *nk);

/**
 * Release a surface handle. Null is ignored.
 *
 * # Safety
 * `s` must come from [`qf_surface_new`] and not be freed twice.
 */
void qf_surface_free(struct QfSurface *s);

/**
 * Gauss hypergeometric function, principal branch.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_hyp2f1(double a, double b, double c, struct QfComplex z, struct QfComplex *out);

/**
 * Limit of 2F1 at real `z` approached from the upper half-plane. `err` may be null.
 *
 * # Safety
 * `out` must be valid for writes; `err` null or valid.
 */
enum QfStatus qf_hyp2f1_boundary(double a,
                                 double b,
                                 double c,
                                 double z,
                                 struct QfComplex *out,
                                 double *err);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_q_exponential(struct QfComplex z, double q, struct QfComplex *out);

/**
 * Shared fixed-q transform of every window on a Hilhorst level set.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_degenerate_transform(double lambda, double q, double k, struct QfComplex *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum QfStatus qf_hilhorst_lambda(double a, double b, double q, double *out);

/**
 * Hypergeometric closed form for the window `(lambda/x)^beta` on `[a, b]`.
 * Returns `QF_STATUS_FALLBACK_REQUIRED` where only quadrature applies.
 *
 * # Safety
 * `out` must be valid for writes; `err` null or valid.
 */
enum QfStatus qf_closed_form_transform(double a,
                                       double b,
                                       double beta,
                                       double lambda,
                                       double q,
                                       double k,
                                       struct QfComplex *out,
                                       double *err);

/**
 * Message for the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next `qf_*` call on the same thread.
 */
const char *qf_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *qf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFOURIER_H */
