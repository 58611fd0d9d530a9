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

#include "glosa/glosa.h"

#include "glosa/config.hpp"
#include "glosa/error.hpp"
#include "glosa/io.hpp"
#include "glosa/scenario.hpp"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <utility>

struct glosa_config
{
  glosa::ScenarioConfig value;
};

struct glosa_run
{
  glosa::RunOutputs value;
};

struct glosa_report
{
  glosa::Comparison value;
};

namespace
{

thread_local std::string g_last_error;

glosa_status fail(glosa_status status, std::string message)
{
  g_last_error = std::move(message);
  return status;
}

// Maps the core's exception hierarchy onto status codes.
template <class F>
glosa_status guarded(F && body)
{
  try {
    body();
    g_last_error.clear();
    return GLOSA_OK;
  } catch (const glosa::ConfigError & e) {
    return fail(GLOSA_ERR_CONFIG, e.what());
  } catch (const glosa::IoError & e) {
    return fail(GLOSA_ERR_IO, e.what());
  } catch (const glosa::SimulationError & e) {
    return fail(GLOSA_ERR_SIMULATION, e.what());
  } catch (const glosa::SolverError & e) {
    return fail(GLOSA_ERR_SOLVER, e.what());
  } catch (const glosa::MismatchError & e) {
    return fail(GLOSA_ERR_MISMATCH, e.what());
  } catch (const std::invalid_argument & e) {
    return fail(GLOSA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc &) {
    return fail(GLOSA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception & e) {
    return fail(GLOSA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GLOSA_ERR_INTERNAL, "unknown error");
  }
}

glosa_status null_arg(const char * name)
{
  return fail(GLOSA_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

char * duplicate(const std::string & text)
{
  char * out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

double or_nan(const std::optional<double> & v)
{
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

extern "C" {

const char * glosa_version(void) { return GLOSA_VERSION_STRING; }

const char * glosa_status_name(glosa_status status)
{
  switch (status) {
    case GLOSA_OK:
      return "ok";
    case GLOSA_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case GLOSA_ERR_CONFIG:
      return "configuration error";
    case GLOSA_ERR_IO:
      return "i/o error";
    case GLOSA_ERR_SIMULATION:
      return "simulation error";
    case GLOSA_ERR_SOLVER:
      return "solver error";
    case GLOSA_ERR_MISMATCH:
      return "mismatched inputs";
    case GLOSA_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char * glosa_last_error(void) { return g_last_error.c_str(); }

void glosa_string_free(char * text) { delete[] text; }

glosa_status glosa_config_load(const char * path, glosa_config ** out)
{
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new glosa_config{glosa::load_config(path)}; });
}

glosa_status glosa_config_parse(const char * yaml_text, glosa_config ** out)
{
  if (!yaml_text) return null_arg("yaml_text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new glosa_config{glosa::parse_config(yaml_text)}; });
}

glosa_status glosa_config_default(glosa_config ** out)
{
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    glosa::ScenarioConfig c;
    c.validate();
    *out = new glosa_config{std::move(c)};
  });
}

glosa_status glosa_config_clone(const glosa_config * config, glosa_config ** out)
{
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new glosa_config{config->value}; });
}

void glosa_config_free(glosa_config * config) { delete config; }

glosa_status glosa_config_set_seed(glosa_config * config, uint64_t seed)
{
  if (!config) return null_arg("config");
  return guarded([&] { config->value.set_seed(seed); });
}

glosa_status glosa_config_set_density(glosa_config * config, const char * density)
{
  if (!config) return null_arg("config");
  if (!density) return null_arg("density");
  const auto d = glosa::parse_density(density);
  if (!d) {
    return fail(
      GLOSA_ERR_INVALID_ARGUMENT, std::string("unknown density '") + density + "' (low, medium, high)");
  }
  return guarded([&] { config->value.set_density(*d); });
}

glosa_status glosa_config_set_capacity(glosa_config * config, int module_capacity)
{
  if (!config) return null_arg("config");
  if (module_capacity <= 0) {
    return fail(GLOSA_ERR_INVALID_ARGUMENT, "module capacity must be positive");
  }
  return guarded([&] { config->value.cloud.module_capacity = module_capacity; });
}

glosa_status glosa_config_set_latency_profile(glosa_config * config, const char * profile)
{
  if (!config) return null_arg("config");
  if (!profile) return null_arg("profile");
  return guarded([&] {
    glosa::LatencyModel model = glosa::latency_profile(profile);
    model.seed = config->value.cloud.latency.seed;
    config->value.cloud.latency = model;
  });
}

glosa_status glosa_config_set_duration(glosa_config * config, double seconds)
{
  if (!config) return null_arg("config");
  if (!(seconds > 0.0) || !std::isfinite(seconds)) {
    return fail(GLOSA_ERR_INVALID_ARGUMENT, "duration must be a positive number of seconds");
  }
  return guarded([&] {
    glosa::ScenarioConfig c = config->value;
    c.duration = seconds;
    c.validate();
    config->value = std::move(c);
  });
}

glosa_status glosa_config_to_yaml(const glosa_config * config, char ** out)
{
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = duplicate(glosa::to_yaml(config->value)); });
}

glosa_status glosa_config_hash(const glosa_config * config, char ** out)
{
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = duplicate(glosa::config_hash(config->value)); });
}

glosa_status glosa_config_output_dir(const glosa_config * config, char ** out)
{
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = duplicate(config->value.output_dir); });
}

glosa_status glosa_run_scenario(const glosa_config * config, const char * mode, glosa_run ** out)
{
  if (!config) return null_arg("config");
  if (!mode) return null_arg("mode");
  if (!out) return null_arg("out");
  *out = nullptr;
  const auto m = glosa::parse_mode(mode);
  if (!m) {
    return fail(GLOSA_ERR_INVALID_ARGUMENT, std::string("unknown mode '") + mode + "' (baseline, advised)");
  }
  return guarded([&] { *out = new glosa_run{glosa::run_scenario(config->value, *m)}; });
}

glosa_status glosa_run_write(const glosa_run * run, const char * dir)
{
  if (!run) return null_arg("run");
  if (!dir) return null_arg("dir");
  return guarded([&] { glosa::write_run(run->value, dir); });
}

glosa_status glosa_run_load(const char * dir, glosa_run ** out)
{
  if (!dir) return null_arg("dir");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new glosa_run{glosa::load_run(dir)}; });
}

void glosa_run_free(glosa_run * run) { delete run; }

glosa_status glosa_run_get_stats(const glosa_run * run, glosa_run_stats * out)
{
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  return guarded([&] {
    const glosa::RunOutputs & r = run->value;
    glosa_run_stats s{};
    s.advised = r.mode == glosa::RunMode::Advised ? 1 : 0;
    s.seed = r.config.demand.seed;
    s.vehicles = static_cast<std::size_t>(r.config.demand.vehicle_count);
    s.trajectory_rows = r.trajectory.size();
    s.latency_records = r.latency.size();
    s.ticks = r.stats.ticks;
    s.cluster_runs = r.stats.cluster_runs;
    s.skipped_clusters = r.stats.skipped_clusters;
    s.applied_advisories = r.stats.applied;
    s.mean_busy_processing_ms = r.stats.mean_busy_processing_ms;
    s.max_processing_ms = r.stats.max_processing_ms;
    s.max_module_members = r.stats.max_module_members;
    s.case1_platoons = r.stats.case1_platoons;
    s.case2_platoons = r.stats.case2_platoons;
    s.optimal_solves = r.stats.optimal_solves;
    s.softened_solves = r.stats.softened_solves;
    s.faults = r.stats.faults;
    *out = s;
  });
}

glosa_status glosa_run_manifest(const glosa_run * run, char ** out)
{
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = duplicate(glosa::run_manifest_json(run->value)); });
}

glosa_status glosa_compare(const glosa_run * baseline, const glosa_run * advised, glosa_report ** out)
{
  if (!baseline) return null_arg("baseline");
  if (!advised) return null_arg("advised");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new glosa_report{glosa::compare(baseline->value, advised->value)}; });
}

void glosa_report_free(glosa_report * report) { delete report; }

glosa_status glosa_report_get_summary(const glosa_report * report, glosa_report_summary * out)
{
  if (!report) return null_arg("report");
  if (!out) return null_arg("out");
  return guarded([&] {
    const glosa::Comparison & c = report->value;
    glosa_report_summary s{};
    s.baseline_stopped_delay_s = c.moe.baseline.mean_stopped_delay;
    s.advised_stopped_delay_s = c.moe.advised.mean_stopped_delay;
    s.stopped_delay_reduction_pct = or_nan(c.moe.stopped_delay_reduction);
    s.baseline_travel_time_s = c.moe.baseline.mean_travel_time;
    s.advised_travel_time_s = c.moe.advised.mean_travel_time;
    s.travel_time_reduction_pct = or_nan(c.moe.travel_time_reduction);
    s.baseline_tit_s = c.moe.baseline.total_tit;
    s.advised_tit_s = c.moe.advised.total_tit;
    s.tit_reduction_pct = or_nan(c.moe.tit_reduction);
    s.latency_count = c.latency.count;
    s.latency_mean_ms = c.latency.mean_ms;
    s.latency_p95_ms = c.latency.p95_ms;
    s.latency_max_ms = c.latency.max_ms;
    s.latency_fraction_over_1000ms = c.latency.fraction_over_1000ms;
    *out = s;
  });
}

glosa_status glosa_report_json(const glosa_report * report, char ** out)
{
  if (!report) return null_arg("report");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = duplicate(glosa::comparison_json(report->value)); });
}

glosa_status glosa_report_write(const glosa_report * report, const char * dir)
{
  if (!report) return null_arg("report");
  if (!dir) return null_arg("dir");
  return guarded([&] {
    const std::filesystem::path root(dir);
    glosa::write_file(root / "report.json", glosa::comparison_json(report->value));
    glosa::write_file(root / "report.csv", glosa::comparison_csv({report->value}));
  });
}

glosa_status glosa_sweep(
  const glosa_config * config, const char * out_dir, int jobs, size_t * completed_cells,
  size_t * failed_cells)
{
  if (!config) return null_arg("config");
  if (!out_dir) return null_arg("out_dir");
  if (jobs <= 0) {
    return fail(GLOSA_ERR_INVALID_ARGUMENT, "jobs must be positive");
  }
  return guarded([&] {
    const glosa::SweepResult r = glosa::sweep(config->value, out_dir, jobs);
    if (completed_cells) *completed_cells = r.cells.size();
    if (failed_cells) *failed_cells = r.failures.size();
  });
}

}  // extern "C"
