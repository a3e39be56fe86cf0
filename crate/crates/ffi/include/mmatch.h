#ifndef MMATCH_H
#define MMATCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MmStatus {
  MM_STATUS_OK = 0,
  MM_STATUS_NULL_POINTER = 1,
  MM_STATUS_INVALID_UTF8 = 2,
  MM_STATUS_PARSE = 3,
  MM_STATUS_DOMAIN = 4,
  MM_STATUS_STRUCTURAL = 5,
  MM_STATUS_INVALID_BASIS_SYSTEM = 6,
  MM_STATUS_LOOP = 7,
  MM_STATUS_RANK_MISMATCH = 8,
  MM_STATUS_GROUND_MISMATCH = 9,
  MM_STATUS_PRECONDITION = 10,
  MM_STATUS_SIZE_LIMIT = 11,
  MM_STATUS_ORDER_UNAVAILABLE = 12,
  MM_STATUS_OVERFLOW = 13,
  MM_STATUS_UNKNOWN_CAMPAIGN = 14,
  MM_STATUS_OUT_OF_RANGE = 15,
  MM_STATUS_BUFFER_TOO_SMALL = 16,
  MM_STATUS_PANIC = 17,
} MmStatus;

typedef enum MmEngine {
  MM_ENGINE_AUTO = 0,
  MM_ENGINE_BRUTE_FORCE = 1,
  MM_ENGINE_INTERSECTION = 2,
} MmEngine;

/*
 Opaque matroid handle.
 */
typedef struct MmMatroid MmMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. Valid until the
 next call into this library from the same thread.
 */
const char *mm_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *mm_version(void);

/*
 Builds a matroid from any accepted JSON document.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum MmStatus mm_matroid_from_json(const char *json, struct MmMatroid **out);

/*
 `P_{n,s,m}(a)` over `Z^dim`, with `a` given by `dim` coordinates.

 # Safety
 `a` must point to `dim` readable integers; `out` must be writable.
 */
enum MmStatus mm_matroid_panhandle(size_t n,
                                   size_t s,
                                   size_t m,
                                   const int64_t *a,
                                   size_t dim,
                                   struct MmMatroid **out);

/*
 Releases a handle. NULL is ignored.

 # Safety
 `m` must come from this library and not be used afterwards.
 */
void mm_matroid_free(struct MmMatroid *m);

/*
 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum MmStatus mm_matroid_rank(const struct MmMatroid *m, size_t *out);

/*
 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum MmStatus mm_matroid_ground_len(const struct MmMatroid *m, size_t *out);

/*
 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum MmStatus mm_matroid_basis_count(const struct MmMatroid *m, size_t *out);

/*
 Copies the ground indices of basis `index` (in lexicographic order of
 bases) into `buf`. `len` receives the rank; if `cap` is smaller,
 `MM_STATUS_BUFFER_TOO_SMALL` is returned and nothing is copied.

 # Safety
 `buf` must have room for `cap` entries; `len` must be writable.
 */
enum MmStatus mm_matroid_basis(const struct MmMatroid *m,
                               size_t index,
                               size_t *buf,
                               size_t cap,
                               size_t *len);

/*
 Explicit `{"ctx","ground","bases"}` document.

 # Safety
 `m` must be a live handle; `out` must be writable.
 */
enum MmStatus mm_matroid_to_json(const struct MmMatroid *m, char **out);

/*
 Whether `m` is matched to `n`.

 # Safety
 Both handles must be live; `out` must be writable.
 */
enum MmStatus mm_matched(const struct MmMatroid *m,
                         const struct MmMatroid *n,
                         enum MmEngine engine,
                         bool *out);

/*
 Full match report as JSON (`matched`, `counterexample`, `witnesses`).

 # Safety
 Both handles must be live; `out` must be writable.
 */
enum MmStatus mm_match_report_json(const struct MmMatroid *m,
                                   const struct MmMatroid *n,
                                   enum MmEngine engine,
                                   char **out);

/*
 Runs a campaign by id. `passed` receives whether it found no failures and
 `json` (if not NULL) the serialized result.

 # Safety
 `id` must be a NUL-terminated string; `passed` must be writable; `json`
 may be NULL.
 */
enum MmStatus mm_verify_campaign(const char *id,
                                 uint64_t seed,
                                 size_t trials,
                                 size_t max_m,
                                 bool *passed,
                                 char **json);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void mm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MMATCH_H */
