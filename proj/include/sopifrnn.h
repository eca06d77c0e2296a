#ifndef SOPIFRNN_H
#define SOPIFRNN_H

/* C interface to the sopifrnn solver library.
 *
 * All entry points return a status code (sopifrnn_status); 0 is success.
 * Objects are opaque handles released with the matching _free function.
 * On failure, sopifrnn_last_error() returns a message describing the most
 * recent error on the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sopifrnn_status {
  SOPIFRNN_OK = 0,
  SOPIFRNN_INVALID_ARGUMENT = 1,
  SOPIFRNN_UNSUPPORTED_ORDER = 2,
  SOPIFRNN_RESOURCE_LIMIT = 3,
  SOPIFRNN_SAMPLING_FAILURE = 4,
  SOPIFRNN_DEGENERATE_REFERENCE = 5,
  SOPIFRNN_DIVERGENCE = 6,
  SOPIFRNN_IO_ERROR = 7,
  SOPIFRNN_UNKNOWN = 99
} sopifrnn_status;

typedef struct sopifrnn_config sopifrnn_config;
typedef struct sopifrnn_report sopifrnn_report;

/* Message for the last failing call on this thread; empty string if none. */
const char* sopifrnn_last_error(void);

/* Configs load from a JSON file or an in-memory JSON string. */
sopifrnn_status sopifrnn_config_load(const char* path, sopifrnn_config** out);
sopifrnn_status sopifrnn_config_parse(const char* json_text, sopifrnn_config** out);
void sopifrnn_config_free(sopifrnn_config* config);

/* Overrides applied after loading (CLI flags). */
sopifrnn_status sopifrnn_config_set_seed(sopifrnn_config* config, uint64_t seed);
sopifrnn_status sopifrnn_config_set_output_dir(sopifrnn_config* config, const char* dir);

/* Serialized round-trip of the effective config; caller frees with
 * sopifrnn_string_free. */
sopifrnn_status sopifrnn_config_to_json(const sopifrnn_config* config, char** out);
void sopifrnn_string_free(char* text);

/* Experiment commands; each writes its artifacts under the config's output
 * directory and yields a report handle. */
sopifrnn_status sopifrnn_run_solve(const sopifrnn_config* config, sopifrnn_report** out);
sopifrnn_status sopifrnn_run_optimize(const sopifrnn_config* config, sopifrnn_report** out);
sopifrnn_status sopifrnn_run_sweep(const sopifrnn_config* config, sopifrnn_report** out);
sopifrnn_status sopifrnn_run_dbench(const sopifrnn_config* config, sopifrnn_report** out);
void sopifrnn_report_free(sopifrnn_report* report);

/* Report accessors. Keyed fvals: per-field for solve, per
 * activation/algorithm for optimize, per grid cell for sweep, per derivative
 * method for dbench. */
size_t sopifrnn_report_num_fvals(const sopifrnn_report* report);
const char* sopifrnn_report_fval_key(const sopifrnn_report* report, size_t index);
double sopifrnn_report_fval(const sopifrnn_report* report, size_t index);
double sopifrnn_report_residual_norm(const sopifrnn_report* report);
double sopifrnn_report_wall_seconds(const sopifrnn_report* report);
size_t sopifrnn_report_num_artifacts(const sopifrnn_report* report);
const char* sopifrnn_report_artifact(const sopifrnn_report* report, size_t index);
/* Report as JSON; caller frees with sopifrnn_string_free. */
sopifrnn_status sopifrnn_report_to_json(const sopifrnn_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif
