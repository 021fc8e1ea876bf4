#ifndef TDUAL_H
#define TDUAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Values from 3 on mirror the core error kinds.
typedef enum TdualStatus {
  TDUAL_STATUS_OK = 0,
  TDUAL_STATUS_NULL_ARGUMENT = 1,
  TDUAL_STATUS_INVALID_UTF8 = 2,
  TDUAL_STATUS_ILL_FORMED_HOM = 3,
  TDUAL_STATUS_UNKNOWN_DESCRIPTOR = 4,
  TDUAL_STATUS_BAD_PARAMETERS = 5,
  TDUAL_STATUS_DEGREE_OVERFLOW = 6,
  TDUAL_STATUS_DEGREE_OUT_OF_RANGE = 7,
  TDUAL_STATUS_INVALID_CLASS = 8,
  TDUAL_STATUS_OBSTRUCTION_NONZERO = 9,
  TDUAL_STATUS_BASE_MISMATCH = 10,
  TDUAL_STATUS_UNSUPPORTED_DIMENSION = 11,
  TDUAL_STATUS_UNSUPPORTED_TWIST = 12,
  TDUAL_STATUS_NOT_DUALIZABLE = 13,
  TDUAL_STATUS_UNRESOLVED = 14,
  TDUAL_STATUS_PARSE = 15,
  TDUAL_STATUS_PANIC = 99,
} TdualStatus;

// A pair `(c, t, b)` over a base.
typedef struct TdualPair TdualPair;

// A cohomology model of a base space.
typedef struct TdualSpace TdualSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *tdual_version(void);

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *tdual_last_error(void);

// Releases a string returned through an `out` parameter. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void tdual_string_free(char *s);

// Builds the model for `descriptor`, e.g. `"surface:g=2"`.
//
// # Safety
// `descriptor` must be a NUL-terminated string and `out` writable.
enum TdualStatus tdual_space_new(const char *descriptor, struct TdualSpace **out);

// # Safety
// `space` must come from [`tdual_space_new`] and not have been freed.
void tdual_space_free(struct TdualSpace *space);

// Number of generators of `H^degree`, or -1 for a null handle.
//
// # Safety
// `space` must be a live handle or null.
int64_t tdual_space_num_generators(const struct TdualSpace *space, uintptr_t degree);

// The cohomology ring as JSON.
//
// # Safety
// `space` must be a live handle and `out` writable.
enum TdualStatus tdual_space_json(const struct TdualSpace *space, char **out);

// Builds a pair from coordinate arrays in generator order. Arrays may be
// null when their length is 0.
//
// # Safety
// Each array must hold at least its stated length; `space` must be live.
enum TdualStatus tdual_pair_new(const struct TdualSpace *space,
                                const int64_t *c,
                                uintptr_t c_len,
                                const int64_t *t,
                                uintptr_t t_len,
                                const int64_t *b,
                                uintptr_t b_len,
                                struct TdualPair **out);

// Parses `{"base": ..., "c": [...], "t": [...], "b": [...]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum TdualStatus tdual_pair_from_json(const char *json, struct TdualPair **out);

// # Safety
// `pair` must be a live handle and `out` writable.
enum TdualStatus tdual_pair_json(const struct TdualPair *pair, char **out);

// The T-dual pair as a new handle.
//
// # Safety
// `pair` must be a live handle and `out` writable.
enum TdualStatus tdual_pair_dualize(const struct TdualPair *pair, struct TdualPair **out);

// Whether two pairs are isomorphic, written to `out` as 0 or 1.
//
// # Safety
// Both handles must be live and `out` writable.
enum TdualStatus tdual_pair_isomorphic(const struct TdualPair *a,
                                       const struct TdualPair *b,
                                       int32_t *out);

// # Safety
// `pair` must come from this library and not have been freed.
void tdual_pair_free(struct TdualPair *pair);

// Runs the command line with `argv[0..argc]` (without the program name).
// Standard output goes to `out_stdout`, the exit code to `out_code`; a
// non-zero exit code is not an FFI failure, and diagnostics are available
// from [`tdual_last_error`].
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; outputs must be writable.
enum TdualStatus tdual_run(const char *const *argv,
                           uintptr_t argc,
                           char **out_stdout,
                           int32_t *out_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TDUAL_H */
