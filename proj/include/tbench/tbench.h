// Copyright 2026 The TransferBench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef TBENCH_TBENCH_H_
#define TBENCH_TBENCH_H_

/*
 * C interface to the TransferBench library.
 *
 * Every function that can fail returns a tbench_status. On failure the
 * calling thread's last error message and error kind are available through
 * tbench_last_error() and tbench_last_error_kind() until the next call on the
 * same thread. Strings returned through char** out-parameters are owned by
 * the caller and released with tbench_string_free().
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define TBENCH_API __attribute__((visibility("default")))
#else
#define TBENCH_API
#endif

typedef enum tbench_status {
  TBENCH_OK = 0,
  TBENCH_ERR_INTERNAL = 1, /* bug or unexpected failure */
  TBENCH_ERR_CONFIG = 2,   /* bad configuration, usage or credentials */
  TBENCH_ERR_DATA = 3      /* data integrity: manifests, predictions, records */
} tbench_status;

typedef enum tbench_log_level {
  TBENCH_LOG_DEBUG = 0,
  TBENCH_LOG_INFO = 1,
  TBENCH_LOG_WARN = 2,
  TBENCH_LOG_ERROR = 3
} tbench_log_level;

typedef struct tbench_config tbench_config;
typedef struct tbench_eval tbench_eval;

typedef struct tbench_run_options {
  const char* out_dir; /* dataset root; required */
  int offline;         /* non-zero: no network, mock models and cached pages */
  int jobs;            /* worker threads, < 1 means 1 */
} tbench_run_options;

TBENCH_API const char* tbench_version(void);
TBENCH_API const char* tbench_last_error(void);
/* Error kind name, e.g. "ManifestMismatch"; empty after success. */
TBENCH_API const char* tbench_last_error_kind(void);
TBENCH_API void tbench_string_free(char* s);
TBENCH_API void tbench_set_log_level(tbench_log_level level);

/* Configuration. Setters re-validate the whole configuration. */
TBENCH_API tbench_status tbench_config_load(const char* path, tbench_config** out);
TBENCH_API void tbench_config_free(tbench_config* config);
TBENCH_API tbench_status tbench_config_set_domains(tbench_config* config, const char* comma_separated);
TBENCH_API tbench_status tbench_config_set_languages(tbench_config* config, const char* comma_separated);
TBENCH_API tbench_status tbench_config_set_seed(tbench_config* config, uint64_t seed);
/* Validated configuration as JSON. */
TBENCH_API tbench_status tbench_config_to_json(const tbench_config* config, char** out_json);

/*
 * Dataset generation. `summary_json` (may be NULL) receives
 * {"attrition", "attrition_table", "stats", "stats_table", "dataset_hash",
 * "empty"}. An empty dataset is not an error here.
 */
TBENCH_API tbench_status tbench_generate(const tbench_config* config, const tbench_run_options* options,
                                         char** summary_json);
/* One stage: "fetch", "gate", "qa", "translate" or "assemble". */
TBENCH_API tbench_status tbench_run_stage(const tbench_config* config, const char* stage,
                                          const tbench_run_options* options, char** summary_json);

/* Per-domain counts of a serialized dataset: {"rows", "table", "csv"}. */
TBENCH_API tbench_status tbench_stats(const char* dataset_dir, char** out_json);

/*
 * Writes audit.json and audit.csv to out_dir: ceil(fraction * n) pivot QAs
 * sampled without replacement, restricted to `domains` (comma separated, NULL
 * or "" for all). Requires 0 < fraction <= 1.
 */
TBENCH_API tbench_status tbench_audit(const char* dataset_dir, double fraction, uint64_t seed, const char* domains,
                                      const char* out_dir, char** summary_json);

/* Evaluation. */
TBENCH_API tbench_status tbench_eval_new(const char* dataset_dir, const char* out_dir, tbench_eval** out);
TBENCH_API void tbench_eval_free(tbench_eval* eval);
TBENCH_API tbench_status tbench_eval_set_predictions(tbench_eval* eval, const char* predictions_dir);
/* Program and leading arguments separated by spaces, e.g. "python3 -m trainer". */
TBENCH_API tbench_status tbench_eval_set_trainer(tbench_eval* eval, const char* command);
TBENCH_API tbench_status tbench_eval_set_models(tbench_eval* eval, const char* comma_separated);
/* "en:ja,ja:en"; unset means every ordered pair. */
TBENCH_API tbench_status tbench_eval_set_pairs(tbench_eval* eval, const char* pairs);
/* "model=billions,..." for the size series. */
TBENCH_API tbench_status tbench_eval_set_model_sizes(tbench_eval* eval, const char* sizes);
TBENCH_API tbench_status tbench_eval_set_jobs(tbench_eval* eval, int jobs);
TBENCH_API tbench_status tbench_eval_set_seed(tbench_eval* eval, uint64_t seed);
/* Writes the report files; `summary_json` receives report.json's content. */
TBENCH_API tbench_status tbench_eval_run(tbench_eval* eval, char** summary_json);

/* Scores of one contingency matrix. Undefined scores fail with TBENCH_ERR_DATA. */
TBENCH_API tbench_status tbench_overall_score(uint64_t a, uint64_t b, uint64_t c, uint64_t d, double* out);
TBENCH_API tbench_status tbench_transfer_score(uint64_t a, uint64_t b, uint64_t c, uint64_t d, double* out);

/*
 * Records a command run in out_dir/run_record.json: command, arguments,
 * library version and the SHA-256 of every file under out_dir except logs/
 * and the record itself.
 */
TBENCH_API tbench_status tbench_write_run_record(const char* out_dir, const char* command, int argc,
                                                 const char* const* argv);

#ifdef __cplusplus
}
#endif

#endif /* TBENCH_TBENCH_H_ */
