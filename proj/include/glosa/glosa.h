// Copyright 2026 The GLOSA Cloud Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOSA_GLOSA_H_
#define GLOSA_GLOSA_H_

/* Stable C interface to the corridor simulator and advisory pipeline.
 *
 * Every fallible call returns a glosa_status. On failure the thread-local
 * message from glosa_last_error() explains it. Handles are opaque and owned
 * by the caller; release them with the matching *_free function. Strings
 * returned through char** must be released with glosa_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(GLOSA_BUILDING_LIBRARY)
#define GLOSA_API __attribute__((visibility("default")))
#else
#define GLOSA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glosa_status {
  GLOSA_OK = 0,
  GLOSA_ERR_INVALID_ARGUMENT = 1,
  GLOSA_ERR_CONFIG = 2,
  GLOSA_ERR_IO = 3,
  GLOSA_ERR_SIMULATION = 4,
  GLOSA_ERR_SOLVER = 5,
  GLOSA_ERR_MISMATCH = 6,
  GLOSA_ERR_INTERNAL = 7
} glosa_status;

typedef struct glosa_config glosa_config;
typedef struct glosa_run glosa_run;
typedef struct glosa_report glosa_report;

GLOSA_API const char * glosa_version(void);
GLOSA_API const char * glosa_status_name(glosa_status status);
/* Message of the last failed call on this thread; "" if none. */
GLOSA_API const char * glosa_last_error(void);
GLOSA_API void glosa_string_free(char * text);

/* ---- configuration ---- */

/* Reads a YAML scenario file, or the config embedded in a run manifest.json. */
GLOSA_API glosa_status glosa_config_load(const char * path, glosa_config ** out);
GLOSA_API glosa_status glosa_config_parse(const char * yaml_text, glosa_config ** out);
/* Built-in defaults: the three-signal 1.5 mi corridor at low density. */
GLOSA_API glosa_status glosa_config_default(glosa_config ** out);
GLOSA_API glosa_status glosa_config_clone(const glosa_config * config, glosa_config ** out);
GLOSA_API void glosa_config_free(glosa_config * config);

GLOSA_API glosa_status glosa_config_set_seed(glosa_config * config, uint64_t seed);
/* "low", "medium" or "high". */
GLOSA_API glosa_status glosa_config_set_density(glosa_config * config, const char * density);
GLOSA_API glosa_status glosa_config_set_capacity(glosa_config * config, int module_capacity);
/* "default", "fast", "slow" or "ideal"; keeps the configured latency seed. */
GLOSA_API glosa_status glosa_config_set_latency_profile(glosa_config * config, const char * profile);
GLOSA_API glosa_status glosa_config_set_duration(glosa_config * config, double seconds);

/* Canonical SI YAML; parsing it back yields an identical config. */
GLOSA_API glosa_status glosa_config_to_yaml(const glosa_config * config, char ** out);
/* 16 hex digits of a 64-bit FNV-1a hash over the canonical YAML. */
GLOSA_API glosa_status glosa_config_hash(const glosa_config * config, char ** out);
GLOSA_API glosa_status glosa_config_output_dir(const glosa_config * config, char ** out);

/* ---- single runs ---- */

/* mode is "baseline" or "advised". */
GLOSA_API glosa_status glosa_run_scenario(const glosa_config * config, const char * mode, glosa_run ** out);
/* Writes trajectory.csv, latency.csv (advised only) and manifest.json. */
GLOSA_API glosa_status glosa_run_write(const glosa_run * run, const char * dir);
GLOSA_API glosa_status glosa_run_load(const char * dir, glosa_run ** out);
GLOSA_API void glosa_run_free(glosa_run * run);

typedef struct glosa_run_stats {
  int advised; /* 1 for advised runs */
  uint64_t seed;
  size_t vehicles;
  size_t trajectory_rows;
  size_t latency_records;
  size_t ticks;
  size_t cluster_runs;
  size_t skipped_clusters;
  size_t applied_advisories;
  double mean_busy_processing_ms;
  double max_processing_ms;
  size_t max_module_members;
  int case1_platoons;
  int case2_platoons;
  int optimal_solves;
  int softened_solves;
  size_t faults;
} glosa_run_stats;

GLOSA_API glosa_status glosa_run_get_stats(const glosa_run * run, glosa_run_stats * out);
GLOSA_API glosa_status glosa_run_manifest(const glosa_run * run, char ** out);

/* ---- paired comparison ---- */

GLOSA_API glosa_status glosa_compare(const glosa_run * baseline, const glosa_run * advised, glosa_report ** out);
GLOSA_API void glosa_report_free(glosa_report * report);

/* Percent reductions are NaN when the baseline value is not positive. */
typedef struct glosa_report_summary {
  double baseline_stopped_delay_s;
  double advised_stopped_delay_s;
  double stopped_delay_reduction_pct;
  double baseline_travel_time_s;
  double advised_travel_time_s;
  double travel_time_reduction_pct;
  double baseline_tit_s;
  double advised_tit_s;
  double tit_reduction_pct;
  size_t latency_count;
  double latency_mean_ms;
  double latency_p95_ms;
  double latency_max_ms;
  double latency_fraction_over_1000ms;
} glosa_report_summary;

GLOSA_API glosa_status glosa_report_get_summary(const glosa_report * report, glosa_report_summary * out);
GLOSA_API glosa_status glosa_report_json(const glosa_report * report, char ** out);
/* Writes report.json and report.csv into dir. */
GLOSA_API glosa_status glosa_report_write(const glosa_report * report, const char * dir);

/* ---- sweeps ---- */

/* Runs every (density, seed) cell of the config's sweep section (or the
 * config's own density and seed when it has none) with up to `jobs` cells in
 * flight. Cells that fail are counted in *failed_cells and listed in
 * failures.txt; the call itself fails only if nothing could be written. */
GLOSA_API glosa_status glosa_sweep(
  const glosa_config * config, const char * out_dir, int jobs, size_t * completed_cells,
  size_t * failed_cells);

#ifdef __cplusplus
}
#endif

#endif /* GLOSA_GLOSA_H_ */
