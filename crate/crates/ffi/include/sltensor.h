#ifndef SLTENSOR_H
#define SLTENSOR_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum SltStatus {
  SLT_STATUS_OK = 0,
  SLT_STATUS_NULL_ARGUMENT = 1,
  SLT_STATUS_INVALID_ARGUMENT = 2,
  SLT_STATUS_PARSE_ERROR = 3,
  SLT_STATUS_INTERNAL_ERROR = 4,
} SltStatus;

// Opaque handle to an exact multivariate polynomial.
typedef struct SltPoly SltPoly;

// Opaque handle to a finished verification run.
typedef struct SltReport SltReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The most recent error message on this thread, or null when the last call
// succeeded. The pointer stays valid until the next failing call on the
// same thread; do not free it.
const char *slt_last_error(void);

// Library version as a static string; do not free.
const char *slt_version(void);

// Releases a string allocated by this library.
//
// # Safety
// `s` must have been returned by a `slt_*` function and not yet freed.
void slt_string_free(char *s);

// Parses a polynomial expression in variables `t1..tn`.
//
// # Safety
// `src` must be a valid NUL-terminated string and `out` a valid pointer.
enum SltStatus slt_poly_parse(const char *src, uint32_t n, struct SltPoly **out);

// Canonical text form of a polynomial; free with `slt_string_free`.
//
// # Safety
// `poly` must be a live handle from `slt_poly_parse`.
char *slt_poly_to_string(const struct SltPoly *poly);

// Releases a polynomial handle.
//
// # Safety
// `poly` must be a live handle from `slt_poly_parse`, not yet freed.
void slt_poly_free(struct SltPoly *poly);

// Runs the verification suite: `criterion` 1..=12 selects one criterion,
// 0 runs everything. The report handle must be freed with
// `slt_report_free`.
//
// # Safety
// `out` must be a valid pointer.
enum SltStatus slt_suite_run(uint32_t criterion, uint64_t seed, struct SltReport **out);

// Number of checks in the report.
//
// # Safety
// `report` must be a live handle from `slt_suite_run`.
uint32_t slt_report_len(const struct SltReport *report);

// Number of failed checks in the report.
//
// # Safety
// `report` must be a live handle from `slt_suite_run`.
uint32_t slt_report_failed(const struct SltReport *report);

// Deterministic JSON form of the report; free with `slt_string_free`.
//
// # Safety
// `report` must be a live handle from `slt_suite_run`.
char *slt_report_json(const struct SltReport *report);

// Aligned table form of the report; free with `slt_string_free`.
//
// # Safety
// `report` must be a live handle from `slt_suite_run`.
char *slt_report_table(const struct SltReport *report);

// Releases a report handle.
//
// # Safety
// `report` must be a live handle from `slt_suite_run`, not yet freed.
void slt_report_free(struct SltReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLTENSOR_H */
