#ifndef BIBD_H
#define BIBD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BibdStatus {
  BIBD_STATUS_OK = 0,
  BIBD_STATUS_NULL_POINTER = 1,
  BIBD_STATUS_INVALID_UTF8 = 2,
  BIBD_STATUS_PARSE_ERROR = 3,
  BIBD_STATUS_INVALID_DESIGN = 4,
  BIBD_STATUS_OUT_OF_RANGE = 5,
  BIBD_STATUS_BUFFER_TOO_SMALL = 6,
  BIBD_STATUS_NOT_APPLICABLE = 7,
  BIBD_STATUS_PANIC = 8,
} BibdStatus;

typedef enum BibdGenerator {
  BIBD_GENERATOR_FANO = 0,
  BIBD_GENERATOR_PROJECTIVE_PLANE = 1,
  BIBD_GENERATOR_AFFINE_PLANE = 2,
  BIBD_GENERATOR_EXAMPLE15 = 3,
  BIBD_GENERATOR_EXAMPLE40 = 4,
} BibdGenerator;

/**
 * Opaque design handle.
 */
typedef struct BibdDesign BibdDesign;

typedef struct BibdParams {
  size_t v;
  size_t b;
  size_t r;
  size_t k;
  size_t lambda;
} BibdParams;

/**
 * Coverage of the minimal sub-designs. `l` and `m` are 0 when not constant.
 */
typedef struct BibdWdProfile {
  size_t v_prime;
  size_t n;
  size_t l;
  size_t m;
  bool well_distributed;
} BibdWdProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call on the same thread.
 */
const char *bibd_last_error(void);

/**
 * Static description of a status code.
 */
const char *bibd_status_str(enum BibdStatus status);

/**
 * Parses a design from text in the `v k` + blocks format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BibdStatus bibd_design_parse(const char *text, struct BibdDesign **out);

/**
 * Builds a design from `nblocks * k` vertex ids laid out block by block.
 *
 * # Safety
 * `vertices` must point to `nblocks * k` readable values and `out` must be
 * writable.
 */
enum BibdStatus bibd_design_from_blocks(size_t v,
                                        size_t k,
                                        const size_t *vertices,
                                        size_t nblocks,
                                        struct BibdDesign **out);

/**
 * Generates a standard design. `q` is the prime order for the planes and
 * ignored otherwise.
 *
 * # Safety
 * `out` must be writable.
 */
enum BibdStatus bibd_design_generate(enum BibdGenerator kind, size_t q, struct BibdDesign **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void bibd_design_free(struct BibdDesign *d);

/**
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum BibdStatus bibd_design_params(const struct BibdDesign *d, struct BibdParams *out);

/**
 * Copies block `id` into `buf`, which must hold `k` values.
 *
 * # Safety
 * `d` must be a live handle and `buf` must have room for `cap` values.
 */
enum BibdStatus bibd_design_block(const struct BibdDesign *d, size_t id, size_t *buf, size_t cap);

/**
 * Canonical text form of the design.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum BibdStatus bibd_design_serialize(const struct BibdDesign *d, char **out);

/**
 * Enumerates minimal sub-designs and reports their coverage.
 * Returns `NotApplicable` when there are none.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum BibdStatus bibd_wd_profile(const struct BibdDesign *d, struct BibdWdProfile *out);

/**
 * Stable 2-WL class count and number of splitting rounds.
 *
 * # Safety
 * `d` must be a live handle; `classes` and `rounds` must be writable.
 */
enum BibdStatus bibd_wl_refine(const struct BibdDesign *d,
                               bool side_aware,
                               size_t *classes,
                               size_t *rounds);

/**
 * Case letter `'a'` to `'d'` of the sub-design classification.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum BibdStatus bibd_gip_case(const struct BibdDesign *d, char *out);

/**
 * Full pipeline report as JSON. `violations` receives the number of failed
 * checks.
 *
 * # Safety
 * `d` must be a live handle; `out` and `violations` must be writable.
 */
enum BibdStatus bibd_report_json(const struct BibdDesign *d,
                                 bool full,
                                 char **out,
                                 size_t *violations);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bibd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIBD_H */
