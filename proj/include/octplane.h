/*
 * octplane - exact octonion plane polarities and their Moufang sets.
 *
 * C interface of the shared library: opaque handles, integer status codes,
 * JSON strings in and out. Every char* returned through an out-parameter is
 * heap-allocated and must be released with octplane_string_free().
 */
#ifndef OCTPLANE_H
#define OCTPLANE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct octplane_ctx octplane_ctx;

typedef enum {
  OCTPLANE_OK = 0,
  OCTPLANE_ERR_CHECKS_FAILED = 1, /* report produced; at least one check failed */
  OCTPLANE_ERR_CONFIG = 2,
  OCTPLANE_ERR_BAD_INPUT = 3,
  OCTPLANE_ERR_DOMAIN = 4, /* division by zero, outside-domain and the like */
  OCTPLANE_ERR_INTERNAL = 5
} octplane_status;

const char* octplane_version(void);

/*
 * Creates a verification context from a JSON configuration:
 *   {"field":"q"|"qsqrt2"|"f2t", "polarity":"i"|"ii"|"iii"|"iv"|"all",
 *    "samples":1000, "seed":42, "checks":["polarity",...], "jobs":1,
 *    "fault_adjoint":false}
 * Only "field" is required. An explicitly requested polarity that does not
 * fit the field is OCTPLANE_ERR_CONFIG; with "all", unsuitable types are
 * reported as skipped instead.
 */
octplane_status octplane_ctx_create(const char* config_json, octplane_ctx** out_ctx);
void octplane_ctx_destroy(octplane_ctx* ctx);

/* Message for the most recent failure on this context (or on this thread for
 * the context-free calls when ctx is NULL). */
const char* octplane_last_error(const octplane_ctx* ctx);

/* Runs the configured check suites. The report JSON is always produced when
 * the return code is OCTPLANE_OK or OCTPLANE_ERR_CHECKS_FAILED. Identical
 * configurations produce byte-identical reports. */
octplane_status octplane_run_checks(octplane_ctx* ctx, char** out_report_json);

/* Emits `count` distinct absolute points of the context's first polarity
 * type as a JSON array, through the canonical fiber solver. */
octplane_status octplane_absolute_points(octplane_ctx* ctx, uint32_t count, char** out_json);

/* Exact octonion product of two serialized octonions (same algebra). */
octplane_status octplane_octonion_multiply(const char* x_json, const char* y_json,
                                           char** out_json);

/* Polar line of a serialized point under the context's first polarity type,
 * and the polar point of a serialized line. */
octplane_status octplane_polarity_apply_point(octplane_ctx* ctx, const char* point_json,
                                              char** out_line_json);
octplane_status octplane_polarity_apply_line(octplane_ctx* ctx, const char* line_json,
                                             char** out_point_json);

/* Structure-constant table of the field's octonion algebra as CSV. */
octplane_status octplane_structure_table_csv(const char* field, char** out_csv);

void octplane_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* OCTPLANE_H */
