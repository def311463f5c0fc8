#ifndef DIAGRAM_PERIODS_H
#define DIAGRAM_PERIODS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `DP_FALSE` means the computation ran and the property checked does not hold.
 */
typedef enum DpStatus {
  DP_OK = 0,
  DP_FALSE = 1,
  DP_ERR_ARITHMETIC = 2,
  DP_ERR_DIMENSION = 3,
  DP_ERR_PRECONDITION = 4,
  DP_ERR_CONSISTENCY = 5,
  DP_ERR_SCHEMA = 6,
  DP_ERR_JSON = 7,
  DP_ERR_IO = 8,
  DP_ERR_NULL_POINTER = 9,
  DP_ERR_UTF8 = 10,
  DP_ERR_UNKNOWN_COMMAND = 11,
  DP_ERR_PANIC = 12,
} DpStatus;

/**
 * A parsed diagram document: a diagram, an optional product structure and its representations.
 */
typedef struct DpDocument DpDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library; static, do not free.
 */
const char *dp_version(void);

/**
 * Message of the last error on this thread, or null. Valid until the next library call.
 */
const char *dp_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void dp_string_free(char *s);

/**
 * Parses a diagram document. On success `*out` receives a handle to release with `dp_document_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DpStatus dp_document_from_json(const char *json,
                                    struct DpDocument **out_doc);

/**
 * # Safety
 * `doc` must be null or a handle from `dp_document_from_json` that has not been freed.
 */
void dp_document_free(struct DpDocument *doc);

/**
 * Serializes the document back to JSON; free the result with `dp_string_free`.
 *
 * # Safety
 * `doc` must be a live handle and `out_json` a valid pointer.
 */
enum DpStatus dp_document_to_json(const struct DpDocument *doc_ptr, char **out_json);

/**
 * Number of vertices and of representations in the document.
 *
 * # Safety
 * `doc` must be a live handle; the out pointers must be valid.
 */
enum DpStatus dp_document_counts(const struct DpDocument *doc_ptr,
                                 size_t *vertices,
                                 size_t *representations);

/**
 * Dimension of the endomorphism algebra of representation `rep` over the whole diagram.
 *
 * # Safety
 * `doc` must be a live handle and `dim` a valid pointer.
 */
enum DpStatus dp_end_dimension(const struct DpDocument *doc_ptr, size_t rep, size_t *dim);

/**
 * Dimension of the space of intertwiners from representation `a` to representation `b`.
 *
 * # Safety
 * `doc` must be a live handle and `dim` a valid pointer.
 */
enum DpStatus dp_hom_dimension(const struct DpDocument *doc_ptr, size_t a, size_t b, size_t *dim);

/**
 * Compares the period space of `(a, b)` with the dual of the intertwiner space.
 * Returns `DP_OK` when the comparison map is bijective and `DP_FALSE` otherwise.
 *
 * # Safety
 * `doc` must be a live handle; the out pointers must be valid.
 */
enum DpStatus dp_psi_check(const struct DpDocument *doc_ptr,
                           size_t a,
                           size_t b,
                           size_t *dim_periods,
                           size_t *dim_hom);

/**
 * Runs a command-line command on a JSON input. `options_json` may be null or a
 * JSON object with the option names (`vertices`, `small`, `f0`, `samples`, ...).
 * The JSON report is written to `*out_json` (free with `dp_string_free`) for
 * `DP_OK` and `DP_FALSE`; on a fault it holds `{"error": ...}`.
 *
 * # Safety
 * `command` and `input_json` must be NUL-terminated strings, `options_json`
 * null or NUL-terminated, and `out_json` a valid pointer.
 */
enum DpStatus dp_run(const char *command,
                     const char *input_json,
                     const char *options_json,
                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIAGRAM_PERIODS_H */
