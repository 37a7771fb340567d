#ifndef RAMANUJAN_JET_H
#define RAMANUJAN_JET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. The first variants mirror the library's error
 * classes; the rest are ABI-level failures.
 */
typedef enum RjStatus {
  RJ_STATUS_OK = 0,
  RJ_STATUS_CONFIG = 1,
  RJ_STATUS_DOMAIN = 2,
  RJ_STATUS_UNSUPPORTED = 3,
  RJ_STATUS_ORDER_MISMATCH = 4,
  RJ_STATUS_TRUNCATION_MISMATCH = 5,
  RJ_STATUS_NOT_INVERTIBLE = 6,
  RJ_STATUS_POLE = 7,
  RJ_STATUS_DIVERGENCE = 8,
  RJ_STATUS_OUT_OF_REGION = 9,
  RJ_STATUS_NO_SOLUTION = 10,
  RJ_STATUS_INCONSISTENT = 11,
  RJ_STATUS_PARSE = 12,
  RJ_STATUS_NULL_ARGUMENT = 100,
  RJ_STATUS_INVALID_UTF8 = 101,
  RJ_STATUS_BUFFER_TOO_SMALL = 102,
  RJ_STATUS_MISSING = 103,
  RJ_STATUS_PANIC = 199,
} RjStatus;

/**
 * Solution fields readable through `rj_solution_value` and
 * `rj_solution_exact`.
 */
typedef enum RjField {
  RJ_FIELD_Z = 0,
  RJ_FIELD_A = 1,
  RJ_FIELD_B = 2,
  RJ_FIELD_C = 3,
  RJ_FIELD_TAU = 4,
  RJ_FIELD_TAU2 = 5,
  RJ_FIELD_J = 6,
  RJ_FIELD_Q = 7,
  RJ_FIELD_MAX_RESIDUAL = 8,
  RJ_FIELD_SERIES_CHECK = 9,
} RjField;

/**
 * Working precision and recognition tolerance.
 */
typedef struct RjContext RjContext;

/**
 * One solved system.
 */
typedef struct RjSolution RjSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rj_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rj_version(void);

/**
 * Creates a context with `working_bits` of working precision (at least 64).
 *
 * # Safety
 * `out` is a valid pointer to writable storage for one handle.
 */
enum RjStatus rj_context_new(uint32_t working_bits, struct RjContext **out);

/**
 * # Safety
 * `ctx` is null or a handle from `rj_context_new` not yet freed.
 */
void rj_context_free(struct RjContext *ctx);

/**
 * Solves the system for `family` (e.g. "5F4:1/2,1/2") at rational `k`
 * ("1", "3/2") with `u` = +1 or −1.
 *
 * # Safety
 * `ctx` is a live context; `family` and `k` are NUL-terminated strings;
 * `out` is writable for one handle.
 */
enum RjStatus rj_solve(const struct RjContext *ctx,
                       const char *family,
                       const char *k,
                       int u,
                       struct RjSolution **out);

/**
 * # Safety
 * `sol` is null or a handle from `rj_solve` not yet freed.
 */
void rj_solution_free(struct RjSolution *sol);

/**
 * A field rounded to double precision. c and j are Missing for ₃F₂.
 *
 * # Safety
 * `sol` is a live solution; `out` is writable.
 */
enum RjStatus rj_solution_value(const struct RjSolution *sol, enum RjField field, double *out);

/**
 * The recognized form of a field ("1/4", "sqrt(5)", "p + q*sqrt(d)"), or
 * its value to `digits` significant digits when unrecognized. Residual
 * fields are always written as decimals.
 *
 * # Safety
 * `sol` is a live solution; `buf` is null or writable for `len` bytes;
 * `needed` is null or writable.
 */
enum RjStatus rj_solution_exact(const struct RjSolution *sol,
                                enum RjField field,
                                size_t digits,
                                char *buf,
                                size_t len,
                                size_t *needed);

/**
 * 1 when every solved quantity was recognized exactly, else 0; −1 on a
 * null handle.
 *
 * # Safety
 * `sol` is null or a live solution.
 */
int rj_solution_fully_recognized(const struct RjSolution *sol);

/**
 * Reads (k, j, l) back from Σ zⁿ Pₙ(X)(c₀ + c₁(nI+X) + …) for rational
 * `z` and comma-separated rational coefficients `poly`. `out` receives one
 * value per signature entry of the family (1, 2 or 3) and `*count` the
 * number written.
 *
 * # Safety
 * `ctx` is live; `family`, `z`, `poly` are NUL-terminated; `out` is
 * writable for `cap` doubles; `count` is writable.
 */
enum RjStatus rj_signature(const struct RjContext *ctx,
                           const char *family,
                           const char *z,
                           const char *poly,
                           double *out,
                           size_t cap,
                           size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAMANUJAN_JET_H */
