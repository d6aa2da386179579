/* C interface to the steiner classification engine.
 *
 * All functions returning steiner_rc report STEINER_OK on success; on any
 * other code, steiner_last_error() describes the failure for the calling
 * thread. Strings returned through char** are heap-allocated and must be
 * released with steiner_string_free. Handles are opaque and must be
 * released with their matching _free function.
 */
#ifndef STEINER_H
#define STEINER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum steiner_rc {
  STEINER_OK = 0,
  STEINER_ERR_USAGE = 1,    /* malformed arguments or input content */
  STEINER_ERR_DATA = 2,     /* consistency violation, corrupt or missing data */
  STEINER_ERR_RESOURCE = 3  /* a configured cap was exceeded */
} steiner_rc;

const char* steiner_version(void);
const char* steiner_last_error(void);
void steiner_string_free(char* s);

/* ---- designs ---- */

typedef struct steiner_design steiner_design;

steiner_rc steiner_design_read(const char* path, steiner_design** out);
steiner_rc steiner_design_parse(const char* text, steiner_design** out);
steiner_rc steiner_design_write(const steiner_design* d, const char* path);
int steiner_design_order(const steiner_design* d);
int steiner_design_block_count(const steiner_design* d);

/* STEINER_OK when every pair is covered exactly once; STEINER_ERR_DATA with
 * the violation in *report otherwise (report may be NULL). */
steiner_rc steiner_design_validate(const steiner_design* d, char** report);

steiner_rc steiner_design_canonical_hex(const steiner_design* d, char** hex);
steiner_rc steiner_design_aut_order(const steiner_design* d, uint64_t* order);

/* Subsystem statistics for order w (7 or 9): count plus the numbers of
 * unordered pairs meeting in exactly 1 and 3 points. */
steiner_rc steiner_design_subsystem_stats(const steiner_design* d, int w, uint64_t* u,
                                          uint64_t* i1, uint64_t* i3);

void steiner_design_free(steiner_design* d);

/* ---- stage drivers ---- */

typedef struct steiner_configs_result {
  uint64_t classes;
  uint64_t underlying_classes;
  int64_t wilson_index; /* -1 when absent */
} steiner_configs_result;

steiner_rc steiner_configs_run(int m, int r, const char* out_dir, int exclude_wilson,
                               int threads, steiner_configs_result* out);

typedef struct steiner_pipeline_result {
  uint64_t configs_processed;
  uint64_t designs_accepted;
  int resumed;
} steiner_pipeline_result;

steiner_rc steiner_pipeline_run(int v, const char* manifest_path, int shard_index,
                                int shard_count, const char* ledger_path,
                                const char* checkpoint_path, int emit_designs, int threads,
                                steiner_pipeline_result* out);

typedef struct steiner_verify_result {
  int scope_complete;
  int mass_equal;
} steiner_verify_result;

/* report receives the full plain-text report (mass values and tables). */
steiner_rc steiner_verify_run(int v, const char* ledger_path, const char* manifest_path,
                              char** report, steiner_verify_result* out);

/* ---- estimation ---- */

steiner_rc steiner_mu(int v, int w, double* out);
double steiner_alpha(void);
steiner_rc steiner_estimate_total(double count_with_subsystem, double* out);
steiner_rc steiner_latin_f(long long n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* STEINER_H */
