#ifndef HERMITIAN_H
#define HERMITIAN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HqKind {
  HQ_KIND_REPEATED_PLANE = 1,
  HQ_KIND_LINE = 2,
  HQ_KIND_PLANE_PAIR = 3,
  HQ_KIND_CONE = 4,
  HQ_KIND_HYPERBOLIC = 5,
  HQ_KIND_ELLIPTIC = 6,
} HqKind;

typedef enum HqLineClass {
  HQ_LINE_CLASS_NONE = 0,
  HQ_LINE_CLASS_TANGENT = 1,
  HQ_LINE_CLASS_SECANT = 2,
  HQ_LINE_CLASS_GENERATOR = 3,
} HqLineClass;

typedef enum HqStatus {
  HQ_STATUS_OK = 0,
  HQ_STATUS_NULL_POINTER = 1,
  HQ_STATUS_INVALID_ARGUMENT = 2,
  HQ_STATUS_UNSUPPORTED = 3,
  HQ_STATUS_ZERO_FORM = 4,
  HQ_STATUS_BUFFER_TOO_SMALL = 5,
  HQ_STATUS_INTERNAL = 6,
} HqStatus;

/**
 * Opaque surface handle.
 */
typedef struct HqSurface HqSurface;

typedef struct HqClassification {
  uint8_t type_id;
  uint8_t rank;
  uint8_t kind;
  /**
   * Points of the quadric in PG(3,q).
   */
  uint32_t zero_set_size;
  /**
   * Points of the quadric on X.
   */
  uint32_t section_size;
  /**
   * Codeword weight, |X| − section_size.
   */
  uint32_t weight;
  /**
   * For lines and plane pairs, the class of the line; otherwise 0.
   */
  uint8_t line_class;
  /**
   * Generators of X on the quadric: on a cone, or per ruling on a
   * hyperbolic quadric (larger first).
   */
  uint32_t generators[2];
} HqClassification;

typedef struct HqBounds {
  uint64_t surface_size;
  /**
   * s, s₂, s₃, s₄, s₅.
   */
  uint64_t sections[5];
  uint64_t weights[5];
  uint64_t elliptic_bound;
} HqBounds;

typedef struct HqCountFormulas {
  uint64_t second_count;
  uint64_t third_count;
  uint64_t n_q;
  uint64_t tangent_planes;
  uint64_t tangent_pairs_on_generator;
  uint64_t mixed_pairs_on_tangent_line;
  uint64_t mixed_pairs_on_secant;
} HqCountFormulas;

typedef struct HqWeightCount {
  uint32_t weight;
  uint64_t codewords;
} HqWeightCount;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call into this library from the same thread.
 */
const char *hq_last_error(void);

/**
 * Builds X over GF(t²). Supported t: 2, 3, 4, 5.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum HqStatus hq_surface_new(uint32_t t, struct HqSurface **out);

/**
 * # Safety
 * `s` must come from [`hq_surface_new`] and not be freed twice. Null is a no-op.
 */
void hq_surface_free(struct HqSurface *s);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for a write.
 */
enum HqStatus hq_surface_point_count(const struct HqSurface *s, uint64_t *out);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for a write.
 */
enum HqStatus hq_surface_tangent_plane_count(const struct HqSurface *s, uint64_t *out);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for a write.
 */
enum HqStatus hq_surface_generator_count(const struct HqSurface *s, uint64_t *out);

/**
 * Classifies the quadric of a form given by 10 coefficient indices.
 *
 * # Safety
 * `s` must be a live handle, `coeffs` must point to 10 bytes and `out`
 * must be valid for a write.
 */
enum HqStatus hq_classify(const struct HqSurface *s,
                          const uint8_t *coeffs,
                          struct HqClassification *out);

/**
 * Hamming weight of the codeword of a nonzero form.
 *
 * # Safety
 * As for [`hq_classify`].
 */
enum HqStatus hq_weight(const struct HqSurface *s, const uint8_t *coeffs, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum HqStatus hq_bounds(uint32_t t, struct HqBounds *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum HqStatus hq_count_formulas(uint32_t t, struct HqCountFormulas *out);

/**
 * Exhaustive weight distribution (t = 2 only), ascending by weight.
 *
 * `*len` receives the number of entries. If `cap` is too small nothing is
 * written to `buf` and `BufferTooSmall` is returned; call with `buf = NULL`
 * and `cap = 0` to query the size.
 *
 * # Safety
 * `s` must be a live handle, `len` valid for a write and `buf` valid for
 * `cap` writes unless null.
 */
enum HqStatus hq_weight_distribution(const struct HqSurface *s,
                                     size_t shards,
                                     struct HqWeightCount *buf,
                                     size_t cap,
                                     size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMITIAN_H */
