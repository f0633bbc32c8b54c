#ifndef SPINVERIFY_H
#define SPINVERIFY_H

/* C interface of the spinverify library.  All functions are thread-safe; the
 * last-error message is thread-local.  Strings returned as char* are owned by
 * the caller and must be released with spv_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spv_status {
    SPV_OK = 0,
    SPV_ERR_INVALID_ARGUMENT = 1,
    SPV_ERR_UNKNOWN_CHECK = 2,
    SPV_ERR_BAD_CONFIG = 3,
    SPV_ERR_INTERNAL = 4
} spv_status;

/* Opaque handle to a batch of verification reports. */
typedef struct spv_result spv_result;

const char* spv_version(void);

/* Message for the most recent failing call on this thread (never NULL). */
const char* spv_last_error(void);

/* JSON array of {"id", "description", "params"} for every registered check. */
char* spv_list_checks(void);

/* config_json: JSON array of {"check": "<id>", "params": {...}} descriptors.
 * jobs <= 0 selects a single worker. */
spv_status spv_run_config(const char* config_json, int jobs, spv_result** out);

/* Run every registered check with its default parameters. */
spv_status spv_run_default_suite(int jobs, spv_result** out);

/* params_json may be NULL or "{}" for the check's defaults. */
spv_status spv_run_check(const char* check_id, const char* params_json, spv_result** out);

size_t spv_result_count(const spv_result* res);
/* 1 if every report has status "pass", else 0. */
int spv_result_all_passed(const spv_result* res);
/* format: "json" or "text".  include_runtime == 0 zeroes the runtime_ms
 * fields, which makes the output byte-stable across runs. */
char* spv_result_render(const spv_result* res, const char* format, int include_runtime);

void spv_result_free(spv_result* res);
void spv_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SPINVERIFY_H */
