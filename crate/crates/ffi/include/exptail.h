#ifndef EXPTAIL_H
#define EXPTAIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a single inequality check.
 */
typedef enum ExptailCheckStatus {
  EXPTAIL_CHECK_STATUS_PASS = 0,
  EXPTAIL_CHECK_STATUS_FAIL = 1,
  EXPTAIL_CHECK_STATUS_INDETERMINATE = 2,
} ExptailCheckStatus;

/**
 * Report serialization.
 */
typedef enum ExptailFormat {
  EXPTAIL_FORMAT_JSON = 0,
  EXPTAIL_FORMAT_CSV = 1,
  EXPTAIL_FORMAT_TEXT = 2,
} ExptailFormat;

/**
 * Result code of every call.
 */
typedef enum ExptailStatus {
  EXPTAIL_STATUS_OK = 0,
  EXPTAIL_STATUS_NULL_POINTER = 1,
  EXPTAIL_STATUS_INVALID_STRING = 2,
  EXPTAIL_STATUS_USAGE = 3,
  EXPTAIL_STATUS_DOMAIN = 4,
  EXPTAIL_STATUS_NO_CONVERGENCE = 5,
  EXPTAIL_STATUS_POLE = 6,
  EXPTAIL_STATUS_DEGENERATE = 7,
  EXPTAIL_STATUS_BUFFER_TOO_SMALL = 8,
  EXPTAIL_STATUS_PANIC = 9,
} ExptailStatus;

/**
 * Result of one check.
 */
typedef struct ExptailCheck ExptailCheck;

/**
 * Working precision and tolerance.
 */
typedef struct ExptailContext ExptailContext;

/**
 * Result of a sweep over a grid.
 */
typedef struct ExptailReport ExptailReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next `exptail_*` call on the same thread.
 */
const char *exptail_last_error_message(void);

/**
 * Create a context with `bits` of precision (53 to 1000) and the default
 * tolerance.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum ExptailStatus exptail_context_new(uint32_t bits, struct ExptailContext **out);

/**
 * # Safety
 * `ctx` must be NULL or a handle from [`exptail_context_new`] not yet freed.
 */
void exptail_context_free(struct ExptailContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context handle.
 */
uint32_t exptail_context_bits(const struct ExptailContext *ctx);

/**
 * `R_n(x)`, `x ≥ 0`.
 *
 * # Safety
 * `ctx` must be a live context handle, `x` a NUL-terminated decimal string,
 * `buf` writable for `buf_len` bytes. `needed` and `approx` may be NULL.
 */
enum ExptailStatus exptail_r_tail(const struct ExptailContext *ctx,
                                  uint32_t n,
                                  const char *x,
                                  char *buf,
                                  size_t buf_len,
                                  size_t *needed,
                                  double *approx);

/**
 * `|R_n(-x)|`, `x ≥ 0`.
 *
 * # Safety
 * As for [`exptail_r_tail`].
 */
enum ExptailStatus exptail_r_neg(const struct ExptailContext *ctx,
                                 uint32_t n,
                                 const char *x,
                                 char *buf,
                                 size_t buf_len,
                                 size_t *needed,
                                 double *approx);

/**
 * `R_{n,m}(x)`.
 *
 * # Safety
 * As for [`exptail_r_tail`].
 */
enum ExptailStatus exptail_r_obreshkov(const struct ExptailContext *ctx,
                                       uint32_t n,
                                       uint32_t m,
                                       const char *x,
                                       char *buf,
                                       size_t buf_len,
                                       size_t *needed,
                                       double *approx);

/**
 * `[n/m](x)`, the Padé approximant of `exp`.
 *
 * # Safety
 * As for [`exptail_r_tail`].
 */
enum ExptailStatus exptail_pade(const struct ExptailContext *ctx,
                                uint32_t n,
                                uint32_t m,
                                const char *x,
                                char *buf,
                                size_t buf_len,
                                size_t *needed,
                                double *approx);

/**
 * `R_a(x)` for real order `a > -1`, given as a decimal string.
 *
 * # Safety
 * As for [`exptail_r_tail`]; `a` must be a NUL-terminated decimal string.
 */
enum ExptailStatus exptail_r_frac(const struct ExptailContext *ctx,
                                  const char *a,
                                  const char *x,
                                  char *buf,
                                  size_t buf_len,
                                  size_t *needed,
                                  double *approx);

/**
 * Evaluate one check, e.g. `id = "ALZER"`, `params = "n=2;x=0.5"`.
 *
 * # Safety
 * `ctx` must be a live context handle, `id` and `params` NUL-terminated
 * strings, `out` valid for one handle.
 */
enum ExptailStatus exptail_check(const struct ExptailContext *ctx,
                                 const char *id,
                                 const char *params,
                                 struct ExptailCheck **out);

/**
 * # Safety
 * `check` must be NULL or a live handle from [`exptail_check`].
 */
void exptail_check_free(struct ExptailCheck *check);

/**
 * # Safety
 * `check` must be a live handle; `out` must be writable.
 */
enum ExptailStatus exptail_check_status(const struct ExptailCheck *check,
                                        enum ExptailCheckStatus *out);

/**
 * Margin (favored side minus other side) as a decimal string.
 *
 * # Safety
 * As for [`exptail_r_tail`], with `check` a live handle.
 */
enum ExptailStatus exptail_check_margin(const struct ExptailCheck *check,
                                        char *buf,
                                        size_t buf_len,
                                        size_t *needed,
                                        double *approx);

/**
 * Quotient of the two sides, when the check defines one. Returns
 * `EXPTAIL_USAGE` otherwise.
 *
 * # Safety
 * As for [`exptail_check_margin`].
 */
enum ExptailStatus exptail_check_ratio(const struct ExptailCheck *check,
                                       char *buf,
                                       size_t buf_len,
                                       size_t *needed,
                                       double *approx);

/**
 * Sweep checks over a grid. `ids` is a comma list or `all`; `grid` uses the
 * CLI syntax, and NULL or an empty string means the per-check defaults.
 *
 * # Safety
 * `ctx` must be a live context handle, `ids` a NUL-terminated string, `grid`
 * NULL or NUL-terminated, `out` valid for one handle.
 */
enum ExptailStatus exptail_sweep(const struct ExptailContext *ctx,
                                 const char *ids,
                                 const char *grid,
                                 struct ExptailReport **out);

/**
 * # Safety
 * `report` must be NULL or a live handle from [`exptail_sweep`].
 */
void exptail_report_free(struct ExptailReport *report);

/**
 * Counts of PASS, FAIL, INDET and ERROR rows. Any out pointer may be NULL.
 *
 * # Safety
 * `report` must be a live handle.
 */
enum ExptailStatus exptail_report_counts(const struct ExptailReport *report,
                                         size_t *pass,
                                         size_t *fail,
                                         size_t *indeterminate,
                                         size_t *errors);

/**
 * The report rendered as the CLI would write it.
 *
 * # Safety
 * `report` must be a live handle and `buf` writable for `buf_len` bytes;
 * `needed` may be NULL.
 */
enum ExptailStatus exptail_report_render(const struct ExptailReport *report,
                                         enum ExptailFormat format,
                                         char *buf,
                                         size_t buf_len,
                                         size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *exptail_version(void);

/**
 * Exit-code style summary: 0 when nothing failed, 1 on FAIL rows, 3 when
 * any row errored.
 *
 * # Safety
 * `report` must be a live handle.
 */
int exptail_report_exit_code(const struct ExptailReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXPTAIL_H */
