#ifndef TRANSVECT_H
#define TRANSVECT_H

#include <stddef.h>
#include <stdint.h>

typedef enum TvStatus {
  TV_STATUS_OK = 0,
  TV_STATUS_NULL_POINTER = 1,
  TV_STATUS_INVALID_ARGUMENT = 2,
  TV_STATUS_BUFFER_TOO_SMALL = 3,
  TV_STATUS_NOT_ON_SIGMA = 4,
  TV_STATUS_NO_CHART = 5,
  TV_STATUS_NUMERICAL = 6,
  TV_STATUS_PANIC = 7,
} TvStatus;

typedef enum TvCase {
  TV_CASE_HYPERBOLIC = 0,
  TV_CASE_ELLIPTIC = 1,
  TV_CASE_NILPOTENT = 2,
} TvCase;

typedef enum TvVerdict {
  TV_VERDICT_PASS = 0,
  TV_VERDICT_FAIL = 1,
  TV_VERDICT_UNKNOWN = 2,
  TV_VERDICT_DOCUMENTED = 3,
} TvVerdict;

/**
 * A symplectic model with its characteristic element.
 */
typedef struct TvModel TvModel;

/**
 * A certificate report with its JSON rendering.
 */
typedef struct TvReport TvReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a model. `k` is used by the hyperbolic and elliptic cases, `p` by
 * the elliptic and nilpotent cases and `q` by the nilpotent case.
 *
 * # Safety
 * `out` must be a valid pointer; on success it receives a handle to free
 * with [`tv_model_free`].
 */
enum TvStatus tv_model_new(enum TvCase case_,
                           size_t n,
                           double k,
                           size_t p,
                           size_t q,
                           struct TvModel **out);

/**
 * # Safety
 * `m` must be null or a handle from [`tv_model_new`] not yet freed.
 */
void tv_model_free(struct TvModel *m);

/**
 * Reduced dimension `2n` and ambient dimension `2(n + 1)`.
 *
 * # Safety
 * `m` must be a live handle; the output pointers must be valid.
 */
enum TvStatus tv_model_dims(const struct TvModel *m, size_t *reduced, size_t *ambient);

/**
 * `μ` with `A² = μ Id`.
 *
 * # Safety
 * `m` must be a live handle and `mu` a valid pointer.
 */
enum TvStatus tv_model_mu(const struct TvModel *m, double *mu);

/**
 * Copy the ambient form `Ω` (`d × d`, row-major).
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum TvStatus tv_model_omega(const struct TvModel *m, double *buf, size_t len);

/**
 * Copy the characteristic element `A` (`d × d`, row-major).
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum TvStatus tv_model_a(const struct TvModel *m, double *buf, size_t len);

/**
 * `exp(tA)` in closed form (`d × d`, row-major).
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum TvStatus tv_exp_ta(const struct TvModel *m, double t, double *buf, size_t len);

/**
 * `Ω(x, Ax)`, which is 1 on Σ_A.
 *
 * # Safety
 * `x` must point to `len` doubles.
 */
enum TvStatus tv_sigma_value(const struct TvModel *m, const double *x, size_t len, double *value);

/**
 * `count` seeded points of Σ_A, one per row (`count × d`).
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum TvStatus tv_sample_sigma(const struct TvModel *m,
                              size_t count,
                              uint64_t seed,
                              double *buf,
                              size_t len);

/**
 * Chart coordinates of the orbit through `x`. `written` receives the number
 * of coordinates, which depends on the chart.
 *
 * # Safety
 * `x` must point to `len` doubles and `buf` to `buf_len` writable doubles.
 */
enum TvStatus tv_project(const struct TvModel *m,
                         const double *x,
                         size_t len,
                         double *buf,
                         size_t buf_len,
                         size_t *written);

/**
 * Sup-norm distance of the curvature at `π(x)` from its Ricci-type part.
 *
 * # Safety
 * `x` must point to `len` doubles.
 */
enum TvStatus tv_ricci_type_residual(const struct TvModel *m,
                                     const double *x,
                                     size_t len,
                                     double *value);

/**
 * Geometry suite at `samples` seeded points.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TvStatus tv_verify_geometry(const struct TvModel *m,
                                 size_t samples,
                                 uint64_t seed,
                                 struct TvReport **out);

/**
 * Structure of the transvection algebra.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TvStatus tv_transvection(const struct TvModel *m, struct TvReport **out);

/**
 * Search for simply transitive subgroups with the default candidates.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TvStatus tv_find_transitive(const struct TvModel *m,
                                 size_t samples,
                                 uint64_t seed,
                                 struct TvReport **out);

/**
 * Overall verdict; `Unknown` for a null handle.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
enum TvVerdict tv_report_verdict(const struct TvReport *r);

/**
 * JSON rendering, owned by the report and valid until it is freed.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
const char *tv_report_json(const struct TvReport *r);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void tv_report_free(struct TvReport *r);

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next call on the same thread.
 */
const char *tv_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRANSVECT_H */
