#ifndef VVMOD_H
#define VVMOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every exported call.
 */
typedef enum VvmodStatus {
  VVMOD_STATUS_OK = 0,
  VVMOD_STATUS_NULL_POINTER = 1,
  /**
   * Malformed input: bad JSON, invalid UTF-8, index out of range, point
   * off the upper half plane and the like.
   */
  VVMOD_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Mismatched weights, parity or dimensions.
   */
  VVMOD_STATUS_INCOMPATIBLE = 3,
  /**
   * Divergent series, poles, unsupported parameter regions or a
   * non-converging residue.
   */
  VVMOD_STATUS_NUMERIC = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  VVMOD_STATUS_PANIC = 5,
} VvmodStatus;

/**
 * Opaque scalar expansion in `C[[q]][1/y]`.
 */
typedef struct VvmodExpansion VvmodExpansion;

/**
 * Opaque vector-valued form in frame coordinates.
 */
typedef struct VvmodVectorForm VvmodVectorForm;

/**
 * Complex number as two doubles.
 */
typedef struct VvmodComplex {
  double re;
  double im;
} VvmodComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a
 * successful one. Valid until the next call on the same thread.
 */
const char *vvmod_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed; NULL is ignored.
 */
void vvmod_string_free(char *s);

/**
 * Non-holomorphic `E_2` truncated at `q^order`.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum VvmodStatus vvmod_expansion_e2(size_t order, struct VvmodExpansion **out);

/**
 * Holomorphic `E_2` truncated at `q^order`.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum VvmodStatus vvmod_expansion_e2hol(size_t order, struct VvmodExpansion **out);

/**
 * Parse the JSON written by [`vvmod_expansion_to_json`].
 *
 * # Safety
 * `json` must be a NUL-terminated string, `out` valid for writing a pointer.
 */
enum VvmodStatus vvmod_expansion_from_json(const char *json, struct VvmodExpansion **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed; NULL is ignored.
 */
void vvmod_expansion_free(struct VvmodExpansion *f);

/**
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_clone(const struct VvmodExpansion *f, struct VvmodExpansion **out);

/**
 * Weight, depth (largest power of `1/y`) and truncation order.
 *
 * # Safety
 * `f` must be a live handle; each out pointer may be NULL.
 */
enum VvmodStatus vvmod_expansion_shape(const struct VvmodExpansion *f,
                                       int32_t *weight,
                                       size_t *depth,
                                       size_t *order);

/**
 * Coefficient of `y^-r q^n`; zero outside the stored range.
 *
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_coeff(const struct VvmodExpansion *f,
                                       size_t r,
                                       size_t n,
                                       struct VvmodComplex *out);

/**
 * Lowering operator, weight `k -> k - 2`.
 *
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_lower(const struct VvmodExpansion *f, struct VvmodExpansion **out);

/**
 * Raising operator, weight `k -> k + 2`.
 *
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_raise(const struct VvmodExpansion *f, struct VvmodExpansion **out);

/**
 * Weight-`k` Laplacian.
 *
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_laplace(const struct VvmodExpansion *f,
                                         struct VvmodExpansion **out);

/**
 * Product, truncated at the smaller order.
 *
 * # Safety
 * `f`, `g` must be live handles, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_mul(const struct VvmodExpansion *f,
                                     const struct VvmodExpansion *g,
                                     struct VvmodExpansion **out);

/**
 * Sum of two expansions of equal weight.
 *
 * # Safety
 * `f`, `g` must be live handles, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_add(const struct VvmodExpansion *f,
                                     const struct VvmodExpansion *g,
                                     struct VvmodExpansion **out);

/**
 * Value at `tau = x + iy` and a bound on the truncation error.
 *
 * # Safety
 * `f` must be a live handle, `value` valid for writing; `tail_bound` may be NULL.
 */
enum VvmodStatus vvmod_expansion_eval(const struct VvmodExpansion *f,
                                      double x,
                                      double y,
                                      struct VvmodComplex *value,
                                      double *tail_bound);

/**
 * Serialize to JSON; release the string with [`vvmod_string_free`].
 *
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_expansion_to_json(const struct VvmodExpansion *f, char **out);

/**
 * The holomorphic weight-1, `m = 1` form built from `E_2`.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum VvmodStatus vvmod_vector_form_e2vec(size_t order, struct VvmodVectorForm **out);

/**
 * The frame vector `e_{j,m-j}` as a form of weight `m - 2j`.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum VvmodStatus vvmod_vector_form_frame(size_t j,
                                         size_t m,
                                         size_t order,
                                         struct VvmodVectorForm **out);

/**
 * Assemble a form of weight `weight` from `m + 1` frame components. The
 * components are copied; the caller keeps ownership.
 *
 * # Safety
 * `components` must point to `count` live expansion handles.
 */
enum VvmodStatus vvmod_vector_form_new(int32_t weight,
                                       const struct VvmodExpansion *const *components,
                                       size_t count,
                                       struct VvmodVectorForm **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed; NULL is ignored.
 */
void vvmod_vector_form_free(struct VvmodVectorForm *f);

/**
 * Weight and symmetric power `m`.
 *
 * # Safety
 * `f` must be a live handle; each out pointer may be NULL.
 */
enum VvmodStatus vvmod_vector_form_shape(const struct VvmodVectorForm *f,
                                         int32_t *weight,
                                         size_t *m);

/**
 * Copy of the coefficient of `e_{j,m-j}`.
 *
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_vector_form_component(const struct VvmodVectorForm *f,
                                             size_t j,
                                             struct VvmodExpansion **out);

/**
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_vector_form_lower(const struct VvmodVectorForm *f,
                                         struct VvmodVectorForm **out);

/**
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_vector_form_raise(const struct VvmodVectorForm *f,
                                         struct VvmodVectorForm **out);

/**
 * Value at `tau` as the coefficients of `1, X, ..., X^m`. `coeffs` must
 * hold `m + 1` entries; `len` is the caller's capacity.
 *
 * # Safety
 * `f` must be a live handle and `coeffs` valid for `len` writes;
 * `tail_bound` may be NULL.
 */
enum VvmodStatus vvmod_vector_form_eval(const struct VvmodVectorForm *f,
                                        double x,
                                        double y,
                                        struct VvmodComplex *coeffs,
                                        size_t len,
                                        double *tail_bound);

/**
 * # Safety
 * `f` must be a live handle, `out` valid for writing.
 */
enum VvmodStatus vvmod_vector_form_to_json(const struct VvmodVectorForm *f, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string, `out` valid for writing.
 */
enum VvmodStatus vvmod_vector_form_from_json(const char *json, struct VvmodVectorForm **out);

/**
 * `E_k(tau, s)` from its Fourier expansion with `order` terms.
 *
 * # Safety
 * `value` must be valid for writing; `tail_bound` may be NULL.
 */
enum VvmodStatus vvmod_eis_fourier(int32_t k,
                                   struct VvmodComplex s,
                                   double x,
                                   double y,
                                   size_t order,
                                   struct VvmodComplex *value,
                                   double *tail_bound);

/**
 * `E_k(tau, s)` as a coset sum over bottom rows with `max(|c|, |d|) <= radius`.
 *
 * # Safety
 * `value` must be valid for writing.
 */
enum VvmodStatus vvmod_eis_sum(int32_t k,
                               struct VvmodComplex s,
                               double x,
                               double y,
                               uint32_t radius,
                               struct VvmodComplex *value);

/**
 * Run the registered identity checks. `filter` is a glob over check names
 * or NULL for all of them. Writes the reports as a JSON array to `json`
 * and whether every selected check passed to `all_passed`.
 *
 * # Safety
 * `filter` must be NULL or NUL-terminated; `json` and `all_passed` valid for writing.
 */
enum VvmodStatus vvmod_verify(size_t order,
                              uint32_t radius,
                              const char *filter,
                              char **json,
                              bool *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VVMOD_H */
