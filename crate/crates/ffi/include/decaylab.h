#ifndef DECAYLAB_H
#define DECAYLAB_H

/* Generated by cbindgen from decaylab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum dl_status_t {
  DL_STATUS_T_OK = 0,
  DL_STATUS_T_NULL_ARGUMENT = 1,
  DL_STATUS_T_INVALID_ARGUMENT = 2,
  DL_STATUS_T_BUDGET_EXCEEDED = 3,
  DL_STATUS_T_INTERNAL_ERROR = 4,
} dl_status_t;

/**
 * Opaque handle to one decay-function evaluation.
 */
typedef struct dl_decay_result_t dl_decay_result_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *dl_version(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `dl_*` function that
 * documents [`dl_string_free`] as its deallocator, or null.
 */
void dl_string_free(char *s);

/**
 * Evaluate the decay function D(n1, n2)² exactly.
 *
 * `workers = 0` uses all available parallelism; `budget = 0` uses the
 * default reduced-pair budget. On success writes a handle to `out`,
 * which must be released with [`dl_decay_free`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum dl_status_t dl_decay_run(uint32_t n1,
                              uint32_t n2,
                              uint32_t workers,
                              uint64_t budget,
                              bool force,
                              struct dl_decay_result_t **out);

/**
 * Release a decay-result handle.
 *
 * # Safety
 * `result` must come from [`dl_decay_run`], or be null.
 */
void dl_decay_free(struct dl_decay_result_t *result);

/**
 * The exact minimum |det|² as a float (p + q·τ evaluated adaptively).
 *
 * # Safety
 * Valid `result` and `out` pointers required.
 */
enum dl_status_t dl_decay_detsq_float(const struct dl_decay_result_t *result, double *out);

/**
 * D(n1, n2) itself, i.e. the square root of the exact minimum.
 *
 * # Safety
 * Valid `result` and `out` pointers required.
 */
enum dl_status_t dl_decay_value(const struct dl_decay_result_t *result, double *out);

/**
 * Exact |det|² coordinates over {1, τ} as decimal strings "p" and "q",
 * written through two string out-pointers (free both with
 * [`dl_string_free`]).
 *
 * # Safety
 * Valid pointers required.
 */
enum dl_status_t dl_decay_detsq_exact(const struct dl_decay_result_t *result,
                                      char **out_p,
                                      char **out_q);

/**
 * Witness coordinates (a, b, c, d) of one user (1 or 2), written to a
 * caller-provided array of four i64. Fails with `DL_STATUS_INVALID_ARGUMENT`
 * if a coordinate exceeds the i64 range (not reachable for handles
 * produced by [`dl_decay_run`]).
 *
 * # Safety
 * `out_coords` must point to at least four writable i64 slots.
 */
enum dl_status_t dl_decay_witness(const struct dl_decay_result_t *result,
                                  uint32_t user,
                                  int64_t *out_coords);

/**
 * Number of exactly-confirmed candidate pairs.
 *
 * # Safety
 * Valid pointers required.
 */
enum dl_status_t dl_decay_visited_pairs(const struct dl_decay_result_t *result, uint64_t *out);

/**
 * The full record as a JSON object (same schema as the CLI's JSON
 * output). Free with [`dl_string_free`]; null on internal error.
 *
 * # Safety
 * Valid `result` pointer required.
 */
char *dl_decay_json(const struct dl_decay_result_t *result);

/**
 * The five-row reference table as CSV (same schema as the CLI).
 * Free with [`dl_string_free`]; null on internal error.
 */
char *dl_table_csv(void);

/**
 * One reference table row (n ∈ {5, 10, 15, 20, 25}) as JSON.
 * Free with [`dl_string_free`]; null if n is not a table index.
 */
char *dl_table_row_json(uint32_t n);

/**
 * Exact check of the index-5 factorization z_{5n} = z_n·m_j(n)·m_{j+2}(n).
 * Returns 1 when the identity holds, 0 when it fails, −1 on invalid n.
 */
int32_t dl_factor_identity_holds(uint32_t n);

/**
 * Evaluate the MAC optimality condition at r = r_num/r_den with the
 * derived exponent δ = 2r. Writes whether the condition holds.
 *
 * # Safety
 * `out_optimal` must be a valid pointer.
 */
enum dl_status_t dl_dmt_optimal(int64_t r_num, int64_t r_den, bool *out_optimal);

/**
 * Full optimality report at r = r_num/r_den as JSON (rationals as
 * "num/den" strings with float approximations). Free with
 * [`dl_string_free`]; null on invalid input.
 */
char *dl_dmt_report_json(int64_t r_num, int64_t r_den);

/**
 * The exact optimality threshold as a reduced fraction.
 *
 * # Safety
 * Both out-pointers must be valid.
 */
enum dl_status_t dl_dmt_threshold(int64_t *out_num, int64_t *out_den);

/**
 * Effective Liouville constant 1/(1+√5) for the golden ratio.
 */
double dl_liouville_constant(void);

/**
 * Minimum convergent quality k·|kτ−h| over all convergents with
 * k ≤ max_k.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum dl_status_t dl_liouville_min_quality(uint64_t max_k, double *out);

/**
 * Seeded randomized self-test of the exact ring arithmetic; returns Ok
 * when every trial passes.
 */
enum dl_status_t dl_ring_self_test(uint64_t trials);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DECAYLAB_H */
