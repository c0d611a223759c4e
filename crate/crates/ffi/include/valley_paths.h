#ifndef VALLEY_PATHS_H
#define VALLEY_PATHS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum VpStatus {
  VP_STATUS_OK = 0,
  VP_STATUS_NULL_POINTER = 1,
  VP_STATUS_INVALID_UTF8 = 2,
  VP_STATUS_INVALID_ARGUMENT = 3,
  VP_STATUS_COMPUTATION_FAILED = 4,
  VP_STATUS_VERIFICATION_FAILED = 5,
} VpStatus;

/**
 * Opaque exact polynomial.
 */
typedef struct VpPolynomial VpPolynomial;

/**
 * Opaque truncated generating function of a weight spec.
 */
typedef struct VpSeries VpSeries;

/**
 * Message of the last failed call on this thread. The pointer stays valid
 * until the next failing call on the same thread; do not free it.
 */
const char *vp_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer returned through a `char **` out-parameter
 * of this library that has not been freed yet.
 */
void vp_string_free(char *s);

/**
 * Parses polynomial text such as `"(q+1)^2 - 3*t"`.
 *
 * # Safety
 * `src` must be a valid C string and `out` a writable pointer slot.
 */
enum VpStatus vp_poly_parse(const char *src, struct VpPolynomial **out);

/**
 * Text form of a polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer slot.
 */
enum VpStatus vp_poly_to_string(const struct VpPolynomial *p, char **out);

/**
 * JSON form of a polynomial: a list of `{coeff, monomial}` terms.
 *
 * # Safety
 * `p` must be a live handle and `out` a writable pointer slot.
 */
enum VpStatus vp_poly_to_json(const struct VpPolynomial *p, char **out);

/**
 * Substitutes `bindings` (a parameter list) into `p`.
 *
 * # Safety
 * `p` must be a live handle, `bindings` null or a valid C string and `out`
 * a writable pointer slot.
 */
enum VpStatus vp_poly_eval(const struct VpPolynomial *p,
                           const char *bindings,
                           struct VpPolynomial **out);

/**
 * 1 if the two polynomials are equal, 0 if not, -1 if either is null.
 *
 * # Safety
 * Both arguments must be null or live handles.
 */
int32_t vp_poly_equal(const struct VpPolynomial *a, const struct VpPolynomial *b);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void vp_poly_free(struct VpPolynomial *p);

/**
 * Generating function of valley-uniform paths for a registry spec,
 * truncated at `order`.
 *
 * # Safety
 * `name` must be a valid C string, `params` null or a valid C string and
 * `out` a writable pointer slot.
 */
enum VpStatus vp_series_registry(const char *name,
                                 const char *params,
                                 size_t order,
                                 struct VpSeries **out);

/**
 * Truncation order of a series, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t vp_series_order(const struct VpSeries *s);

/**
 * Copy of the coefficient of `x^n`.
 *
 * # Safety
 * `s` must be a live handle and `out` a writable pointer slot.
 */
enum VpStatus vp_series_coeff(const struct VpSeries *s, size_t n, struct VpPolynomial **out);

/**
 * # Safety
 * `s` must be null or a handle from this library that has not been freed.
 */
void vp_series_free(struct VpSeries *s);

/**
 * Brute-force weight sum over valley-uniform paths of size `n`.
 *
 * # Safety
 * `spec` must be a valid C string, `params` null or a valid C string and
 * `out` a writable pointer slot.
 */
enum VpStatus vp_count(const char *spec, const char *params, size_t n, struct VpPolynomial **out);

/**
 * Number of paths of `family` with size `n` passing `filter` (null for no
 * filter).
 *
 * # Safety
 * `family` must be a valid C string, `filter` null or a valid C string and
 * `out` writable.
 */
enum VpStatus vp_enumerate_count(const char *family, const char *filter, size_t n, uint64_t *out);

/**
 * Named sequence or closed formula at `n`.
 *
 * # Safety
 * `name` must be a valid C string, `params` null or a valid C string and
 * `out` a writable pointer slot.
 */
enum VpStatus vp_oracle(const char *name, size_t n, const char *params, struct VpPolynomial **out);

/**
 * ASCII drawing of a path given as a step string.
 *
 * # Safety
 * `path` and `family` must be valid C strings and `out` a writable pointer
 * slot.
 */
enum VpStatus vp_render(const char *path, const char *family, char **out);

/**
 * Runs a verification suite and writes its JSON report to `report` (may be
 * null). Returns `VerificationFailed` if any check fails.
 *
 * # Safety
 * `suite` must be a valid C string and `report` null or a writable pointer
 * slot.
 */
enum VpStatus vp_verify(const char *suite, size_t max_n, size_t jobs, char **report);

#endif  /* VALLEY_PATHS_H */
