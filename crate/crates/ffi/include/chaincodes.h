#ifndef CHAINCODES_H
#define CHAINCODES_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_UTF8 = 2,
  CC_STATUS_PARSE = 3,
  CC_STATUS_DOMAIN = 4,
  CC_STATUS_BUDGET = 5,
  CC_STATUS_INTERNAL = 6,
} CcStatus;

/**
 * A decomposed semisimple ambient.
 */
typedef struct CcAmbient CcAmbient;

/**
 * A semisimple code of a [`CcAmbient`].
 */
typedef struct CcCode CcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the library.
 */
const char *cc_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cc_string_free(char *s);

/**
 * Builds and decomposes an ambient from a ring descriptor JSON and
 * comma-separated moduli such as `"x^2-1,y^2-1"`.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum CcStatus cc_ambient_new(const char *ring_json,
                             const char *moduli,
                             uint64_t seed,
                             struct CcAmbient **out);

/**
 * # Safety
 * `a` must come from [`cc_ambient_new`] and not have been freed.
 */
void cc_ambient_free(struct CcAmbient *a);

/**
 * Number of cyclotomic classes.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_ambient_num_classes(const struct CcAmbient *a, uintptr_t *out);

/**
 * Code length `n`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_ambient_length(const struct CcAmbient *a, uintptr_t *out);

/**
 * JSON array of the classes.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_ambient_classes_json(const struct CcAmbient *a, char **out);

/**
 * A code from one exponent per class.
 *
 * # Safety
 * `exponents` must point to `len` values; `out` must be writable.
 */
enum CcStatus cc_code_from_exponents(const struct CcAmbient *a,
                                     const uint32_t *exponents,
                                     uintptr_t len,
                                     struct CcCode **out);

/**
 * The ideal generated by `len` polynomials.
 *
 * # Safety
 * `generators` must point to `len` NUL-terminated strings; `out` must be writable.
 */
enum CcStatus cc_code_from_generators(const struct CcAmbient *a,
                                      const char *const *generators,
                                      uintptr_t len,
                                      struct CcCode **out);

/**
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void cc_code_free(struct CcCode *c);

/**
 * Writes the exponent map into `buf` (capacity `cap`) and its length into `len`.
 *
 * # Safety
 * `buf` must hold `cap` values; `len` must be writable.
 */
enum CcStatus cc_code_exponents(const struct CcCode *c,
                                uint32_t *buf,
                                uintptr_t cap,
                                uintptr_t *len);

/**
 * The code record as JSON.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_code_json(const struct CcCode *c, char **out);

/**
 * `|K|` in decimal.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_code_cardinality(const struct CcCode *c, char **out);

/**
 * The dual code (abelian ambients).
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_code_dual(const struct CcCode *c, struct CcCode **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_code_is_selfdual(const struct CcCode *c, bool *out);

/**
 * Exact minimum distance, enumerating at most `budget` words.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_code_min_distance(const struct CcCode *c, uint64_t budget, uint64_t *out);

/**
 * Product lower bound on the distance (abelian ambients).
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_code_distance_bound(const struct CcCode *c, uint64_t budget, uint64_t *out);

/**
 * Whether a self-dual code other than `<a^{t/2}>` exists.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_nontrivial_selfdual_exists(const struct CcAmbient *a, bool *out);

/**
 * Builds a non-trivial self-dual code.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CcStatus cc_build_nontrivial_selfdual(const struct CcAmbient *a, struct CcCode **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAINCODES_H */
