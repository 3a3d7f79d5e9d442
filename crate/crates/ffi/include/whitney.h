#ifndef WHITNEY_H
#define WHITNEY_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WhitneyStatus {
  WHITNEY_STATUS_OK = 0,
  WHITNEY_STATUS_NULL_POINTER = 1,
  WHITNEY_STATUS_INVALID_ARGUMENT = 2,
  WHITNEY_STATUS_PARSE = 3,
  /**
   * A mathematical property failed to hold, e.g. non-unique characterization.
   */
  WHITNEY_STATUS_VIOLATION = 4,
  WHITNEY_STATUS_PANIC = 5,
} WhitneyStatus;

/**
 * Opaque simplicial cochain.
 */
typedef struct WhitneyCochain WhitneyCochain;

/**
 * Opaque differential form with affine coefficients.
 */
typedef struct WhitneyForm WhitneyForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *whitney_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void whitney_string_free(char *s);

/**
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum WhitneyStatus whitney_cochain_from_json(const char *json, struct WhitneyCochain **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum WhitneyStatus whitney_cochain_to_json(const struct WhitneyCochain *c, char **out);

/**
 * # Safety
 * `c` must be null or a live handle, not used afterwards.
 */
void whitney_cochain_free(struct WhitneyCochain *c);

/**
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum WhitneyStatus whitney_form_from_json(const char *json, struct WhitneyForm **out);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum WhitneyStatus whitney_form_to_json(const struct WhitneyForm *form, char **out);

/**
 * Human-readable rendering: plain text when `latex` is 0, LaTeX otherwise.
 *
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum WhitneyStatus whitney_form_render(const struct WhitneyForm *form, int latex, char **out);

/**
 * # Safety
 * `form` must be null or a live handle, not used afterwards.
 */
void whitney_form_free(struct WhitneyForm *form);

/**
 * The Whitney map: cochain to form.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum WhitneyStatus whitney_map(const struct WhitneyCochain *c, struct WhitneyForm **out);

/**
 * The de Rham map: integrates `form` over every face of its degree.
 *
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum WhitneyStatus whitney_derham(const struct WhitneyForm *form, struct WhitneyCochain **out);

/**
 * Solves the characterization system for `c`. Returns `Violation` if the
 * solution is not unique or disagrees with the Whitney map.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum WhitneyStatus whitney_characterize(const struct WhitneyCochain *c, struct WhitneyForm **out);

/**
 * Exact integral of `form` over the face with the given vertex labels, in
 * order, negated when `negative` is nonzero. Written as `"p/q"` or `"p"`.
 *
 * # Safety
 * `form` must be a live handle, `vertices` must point to `len` readable
 * values, and `out` must be writable.
 */
enum WhitneyStatus whitney_integrate(const struct WhitneyForm *form,
                                     const size_t *vertices,
                                     size_t len,
                                     int negative,
                                     char **out);

/**
 * Dimension of the space the characterization system pins down.
 *
 * # Safety
 * `out` must be writable.
 */
enum WhitneyStatus whitney_lambda_e_dimension(size_t n, size_t k, size_t *out);

/**
 * JSON replay of the two-stage elimination, for `1 <= k <= n - 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum WhitneyStatus whitney_proof_trace(size_t n, size_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WHITNEY_H */
