#ifndef COAMOEBA_H
#define COAMOEBA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CoamoebaHalfPlane {
  COAMOEBA_HALF_PLANE_UPPER = 0,
  COAMOEBA_HALF_PLANE_LOWER = 1,
  COAMOEBA_HALF_PLANE_BOTH = 2,
} CoamoebaHalfPlane;

typedef enum CoamoebaLineKind {
  COAMOEBA_LINE_KIND_TWO_DISTINCT_ROOTS = 0,
  COAMOEBA_LINE_KIND_THREE_DISTINCT_ROOTS = 1,
  COAMOEBA_LINE_KIND_REAL_LINE = 2,
  COAMOEBA_LINE_KIND_GENERIC = 3,
} CoamoebaLineKind;

typedef enum CoamoebaMembership {
  COAMOEBA_MEMBERSHIP_INTERIOR = 0,
  COAMOEBA_MEMBERSHIP_VERTEX = 1,
  COAMOEBA_MEMBERSHIP_CLOSURE_BOUNDARY = 2,
  COAMOEBA_MEMBERSHIP_OUTSIDE = 3,
} CoamoebaMembership;

/**
 * Result code of every fallible call.
 */
typedef enum CoamoebaStatus {
  COAMOEBA_STATUS_OK = 0,
  COAMOEBA_STATUS_INVALID_INPUT = 1,
  COAMOEBA_STATUS_NUMERICAL = 2,
  COAMOEBA_STATUS_NULL_POINTER = 3,
  COAMOEBA_STATUS_PANIC = 4,
} CoamoebaStatus;

/**
 * Opaque point cloud on a torus, stored row-major.
 */
typedef struct CoamoebaCloud CoamoebaCloud;

/**
 * Opaque line in projective 3-space.
 */
typedef struct CoamoebaLine3 CoamoebaLine3;

/**
 * Opaque Laurent polynomial.
 */
typedef struct CoamoebaPolynomial CoamoebaPolynomial;

typedef struct CoamoebaComplex {
  double re;
  double im;
} CoamoebaComplex;

/**
 * A point of the projective line; `re` and `im` are ignored when
 * `is_infinite` is nonzero.
 */
typedef struct CoamoebaRoot {
  double re;
  double im;
  int32_t is_infinite;
} CoamoebaRoot;

/**
 * One of the twelve segments of a generic line: the points
 * `fixed_angles + s * direction` for `s` in `[start, end]`.
 */
typedef struct CoamoebaSegment {
  uint32_t direction_index;
  double fixed_angles[3];
  double start;
  double end;
} CoamoebaSegment;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *coamoeba_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *coamoeba_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void coamoeba_string_free(char *s);

/**
 * Parses `text` in the comma-separated variables `vars` (for example
 * `"x,y"`).
 *
 * # Safety
 * `text` and `vars` must be NUL-terminated strings; `out` must be writable.
 */
enum CoamoebaStatus coamoeba_polynomial_parse(const char *text,
                                              const char *vars,
                                              struct CoamoebaPolynomial **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void coamoeba_polynomial_free(struct CoamoebaPolynomial *p);

/**
 * Number of variables.
 *
 * # Safety
 * `p` must be a live polynomial handle.
 */
size_t coamoeba_polynomial_rank(const struct CoamoebaPolynomial *p);

/**
 * Text form of the polynomial; free it with [`coamoeba_string_free`].
 *
 * # Safety
 * `p` must be a live polynomial handle and `out` writable.
 */
enum CoamoebaStatus coamoeba_polynomial_to_string(const struct CoamoebaPolynomial *p, char **out);

/**
 * The initial form for the integer weight `weight[0..len]`.
 *
 * # Safety
 * `p` must be a live handle, `weight` must hold `len` values and `out` must
 * be writable.
 */
enum CoamoebaStatus coamoeba_polynomial_initial_form(const struct CoamoebaPolynomial *p,
                                                     const int64_t *weight,
                                                     size_t len,
                                                     struct CoamoebaPolynomial **out);

/**
 * Phase limit report as JSON text; free it with [`coamoeba_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum CoamoebaStatus coamoeba_phase_limit_json(const struct CoamoebaPolynomial *p, char **out);

/**
 * Samples the coamoeba of a plane curve with about `points` points.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum CoamoebaStatus coamoeba_sample_plane_curve(const struct CoamoebaPolynomial *p,
                                                size_t points,
                                                struct CoamoebaCloud **out);

/**
 * # Safety
 * `c` must come from this library and not have been freed.
 */
void coamoeba_cloud_free(struct CoamoebaCloud *c);

/**
 * Number of points.
 *
 * # Safety
 * `c` must be a live cloud handle.
 */
size_t coamoeba_cloud_len(const struct CoamoebaCloud *c);

/**
 * Angles per point.
 *
 * # Safety
 * `c` must be a live cloud handle.
 */
size_t coamoeba_cloud_rank(const struct CoamoebaCloud *c);

/**
 * Row-major angles, `len * rank` values, owned by the cloud.
 *
 * # Safety
 * `c` must be a live cloud handle.
 */
const double *coamoeba_cloud_data(const struct CoamoebaCloud *c);

/**
 * Membership of `(alpha, beta)` in the coamoeba of `a x + b y + c`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CoamoebaStatus coamoeba_line2_membership(struct CoamoebaComplex a,
                                              struct CoamoebaComplex b,
                                              struct CoamoebaComplex c,
                                              double alpha,
                                              double beta,
                                              double tol,
                                              enum CoamoebaMembership *out);

/**
 * Line with the four given roots.
 *
 * # Safety
 * `roots` must point to four values and `out` must be writable.
 */
enum CoamoebaStatus coamoeba_line3_from_roots(const struct CoamoebaRoot *roots,
                                              struct CoamoebaLine3 **out);

/**
 * Line spanned by four linear forms `forms[2k] * x + forms[2k + 1]`.
 *
 * # Safety
 * `forms` must point to eight values and `out` must be writable.
 */
enum CoamoebaStatus coamoeba_line3_from_forms(const struct CoamoebaComplex *forms,
                                              struct CoamoebaLine3 **out);

/**
 * # Safety
 * `l` must come from this library and not have been freed.
 */
void coamoeba_line3_free(struct CoamoebaLine3 *l);

/**
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum CoamoebaStatus coamoeba_line3_classify(const struct CoamoebaLine3 *l,
                                            enum CoamoebaLineKind *out);

/**
 * Membrane sample of about `samples` points in the chart dropping the
 * first angle.
 *
 * # Safety
 * `l` must be a live handle and `out` writable.
 */
enum CoamoebaStatus coamoeba_line3_sample(const struct CoamoebaLine3 *l,
                                          size_t samples,
                                          enum CoamoebaHalfPlane half_plane,
                                          struct CoamoebaCloud **out);

/**
 * Pairs of intersecting phase limit lines, written as `pairs[2k]`,
 * `pairs[2k + 1]`; at most six pairs.
 *
 * # Safety
 * `l` must be a live handle, `pairs` must hold twelve values and `count`
 * must be writable.
 */
enum CoamoebaStatus coamoeba_line3_intersecting_pairs(const struct CoamoebaLine3 *l,
                                                      uint32_t *pairs,
                                                      size_t *count);

/**
 * The twelve segments of a generic line.
 *
 * # Safety
 * `l` must be a live handle, `out` must hold `capacity` segments and
 * `count` must be writable.
 */
enum CoamoebaStatus coamoeba_line3_segments(const struct CoamoebaLine3 *l,
                                            struct CoamoebaSegment *out,
                                            size_t capacity,
                                            size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COAMOEBA_H */
