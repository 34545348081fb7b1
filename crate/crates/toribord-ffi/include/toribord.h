#ifndef TORIBORD_H
#define TORIBORD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define TORIBORD_OK 0

#define TORIBORD_ERR_ARGUMENT 1

#define TORIBORD_ERR_PARSE 2

#define TORIBORD_ERR_DOMAIN 3

#define TORIBORD_ERR_LIMIT 4

#define TORIBORD_ERR_PANIC 5

/**
 * Opaque simplicial complex handle.
 */
typedef struct ToribordComplex ToribordComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message for this thread into `buf` (truncated,
 * always NUL-terminated when `cap > 0`) and returns the full length.
 *
 * # Safety
 * `buf` must point to at least `cap` writable bytes, or be NULL with cap 0.
 */
uintptr_t toribord_last_error(char *buf, uintptr_t cap);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from a toribord function and not be freed twice.
 */
void toribord_string_free(char *s);

/**
 * The closed-form dimension A_n as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int32_t toribord_an(uint32_t n, char **out);

/**
 * dim_{GF(2)} of the n-th 2-torus bordism group, computed from homology.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int32_t toribord_z2_bordism_dim(uintptr_t n, uint8_t allow_large, uintptr_t *out);

/**
 * Builds X(Z_2^n).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int32_t toribord_complex_new_z2(uintptr_t n, uint8_t allow_large, ToribordComplex **out);

/**
 * Builds the box-truncated X(Z^n; bound).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
int32_t toribord_complex_new_z(uintptr_t n,
                               uint32_t bound,
                               uint8_t allow_large,
                               ToribordComplex **out);

/**
 * Releases a complex handle.
 *
 * # Safety
 * `k` must come from a toribord constructor and not be freed twice.
 */
void toribord_complex_free(ToribordComplex *k);

/**
 * Copies the f-vector into `buf` and stores the number of dimensions in
 * `written`; fails if `cap` is too small.
 *
 * # Safety
 * `buf` must point to `cap` writable entries; other pointers must be valid.
 */
int32_t toribord_complex_f_vector(const ToribordComplex *k,
                                  uintptr_t *buf,
                                  uintptr_t cap,
                                  uintptr_t *written);

/**
 * Serializes the complex in the text format used by the CLI.
 *
 * # Safety
 * Pointers must be valid.
 */
int32_t toribord_complex_to_string(const ToribordComplex *k, char **out);

/**
 * Reduced homology in one dimension, formatted like "H_1 = Z^13".
 *
 * # Safety
 * Pointers must be valid.
 */
int32_t toribord_homology(const ToribordComplex *k, uintptr_t dim, char **out);

/**
 * Free rank of the reduced homology in one dimension.
 *
 * # Safety
 * Pointers must be valid.
 */
int32_t toribord_homology_rank(const ToribordComplex *k, uintptr_t dim, uintptr_t *rank);

/**
 * Realizability of fixed-point data given as a polynomial file (side J).
 * The ring is read from the header; `bound` is ignored for GF(2) and may be
 * 0 for "no truncation" over Z. `faithful` and `realizable` receive 0/1.
 *
 * # Safety
 * `text` must be NUL-terminated; output pointers must be valid.
 */
int32_t toribord_check_poly(const char *text,
                            uint32_t bound,
                            uint8_t allow_large,
                            uint8_t *faithful,
                            uint8_t *realizable);

/**
 * Coordinates of realizable fixed-point data in the homology basis of the
 * given complex, as a space-separated decimal string.
 *
 * # Safety
 * `text` must be NUL-terminated; other pointers must be valid.
 */
int32_t toribord_class_coordinates(const char *text, const ToribordComplex *k, char **out);

/**
 * Validates a pair file (ring read from the header).
 *
 * # Safety
 * `text` must be NUL-terminated.
 */
int32_t toribord_pair_validate(const char *text);

/**
 * Fixed-point data (the dual polynomial) of a pair file, serialized.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid.
 */
int32_t toribord_pair_dual(const char *text, char **out);

/**
 * phi of a quasitoric pair file, serialized; fails if d(phi) != 0.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid.
 */
int32_t toribord_pair_phi(const char *text, char **out);

/**
 * Connected sum of two pair files (same ring) at vertices `v1`, `v2`; the
 * glued pair is serialized into `out`.
 *
 * # Safety
 * Texts must be NUL-terminated; `out` must be valid.
 */
int32_t toribord_connect_sum(const char *text1,
                             uintptr_t v1,
                             const char *text2,
                             uintptr_t v2,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIBORD_H */
