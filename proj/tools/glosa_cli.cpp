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

// Command-line front end. Talks to the library through the C API only.

#include "glosa/glosa.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace
{

// Exit codes: 0 success, 1 runtime failure, 2 bad usage or configuration.
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Failure : std::runtime_error
{
  Failure(glosa_status s, const std::string & what) : std::runtime_error(what), status(s) {}
  glosa_status status;
};

void check(glosa_status status, const std::string & context)
{
  if (status != GLOSA_OK) {
    throw Failure(status, context + ": " + glosa_last_error());
  }
}

struct ConfigDeleter
{
  void operator()(glosa_config * c) const { glosa_config_free(c); }
};
struct RunDeleter
{
  void operator()(glosa_run * r) const { glosa_run_free(r); }
};
struct ReportDeleter
{
  void operator()(glosa_report * r) const { glosa_report_free(r); }
};
using ConfigPtr = std::unique_ptr<glosa_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<glosa_run, RunDeleter>;
using ReportPtr = std::unique_ptr<glosa_report, ReportDeleter>;

std::string take_string(char * raw)
{
  std::string s = raw ? raw : "";
  glosa_string_free(raw);
  return s;
}

struct CommonOptions
{
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> density;
  std::optional<int> capacity;
  std::optional<std::string> latency_profile;
  std::optional<double> duration;
  std::string out;
};

ConfigPtr load(const CommonOptions & o)
{
  glosa_config * raw = nullptr;
  if (o.config_path.empty()) {
    check(glosa_config_default(&raw), "default config");
  } else {
    check(glosa_config_load(o.config_path.c_str(), &raw), "loading " + o.config_path);
  }
  ConfigPtr config(raw);
  if (o.seed) check(glosa_config_set_seed(config.get(), *o.seed), "--seed");
  if (o.density) check(glosa_config_set_density(config.get(), o.density->c_str()), "--density");
  if (o.capacity) check(glosa_config_set_capacity(config.get(), *o.capacity), "--capacity");
  if (o.latency_profile) {
    check(glosa_config_set_latency_profile(config.get(), o.latency_profile->c_str()), "--latency-profile");
  }
  if (o.duration) check(glosa_config_set_duration(config.get(), *o.duration), "--duration");
  return config;
}

std::string out_dir(const CommonOptions & o, const glosa_config * config)
{
  if (!o.out.empty()) {
    return o.out;
  }
  char * raw = nullptr;
  check(glosa_config_output_dir(config, &raw), "output dir");
  return take_string(raw);
}

std::string pct(double v)
{
  if (std::isnan(v)) {
    return "n/a";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v);
  return buf;
}

void print_summary(const glosa_report * report)
{
  glosa_report_summary s{};
  check(glosa_report_get_summary(report, &s), "summary");
  std::printf(
    "stopped delay  %.2f s -> %.2f s  (reduction %s)\n", s.baseline_stopped_delay_s,
    s.advised_stopped_delay_s, pct(s.stopped_delay_reduction_pct).c_str());
  std::printf(
    "travel time    %.2f s -> %.2f s  (reduction %s)\n", s.baseline_travel_time_s,
    s.advised_travel_time_s, pct(s.travel_time_reduction_pct).c_str());
  std::printf(
    "TIT            %.2f s -> %.2f s  (reduction %s)\n", s.baseline_tit_s, s.advised_tit_s,
    pct(s.tit_reduction_pct).c_str());
  std::printf(
    "latency        mean %.1f ms, p95 %.1f ms, max %.1f ms over %zu deliveries (%.2f%% > 1000 ms)\n",
    s.latency_mean_ms, s.latency_p95_ms, s.latency_max_ms, s.latency_count,
    100.0 * s.latency_fraction_over_1000ms);
}

RunPtr run_one(const glosa_config * config, const char * mode, const std::filesystem::path & dir)
{
  glosa_run * raw = nullptr;
  check(glosa_run_scenario(config, mode, &raw), std::string(mode) + " run");
  RunPtr run(raw);
  check(glosa_run_write(run.get(), dir.string().c_str()), "writing " + dir.string());
  glosa_run_stats st{};
  check(glosa_run_get_stats(run.get(), &st), "stats");
  std::printf(
    "%-8s seed %llu: %zu rows, %zu latency records -> %s\n", mode,
    static_cast<unsigned long long>(st.seed), st.trajectory_rows, st.latency_records,
    dir.string().c_str());
  return run;
}

ReportPtr compare_and_write(const glosa_run * base, const glosa_run * adv, const std::string & dir)
{
  glosa_report * raw = nullptr;
  check(glosa_compare(base, adv, &raw), "compare");
  ReportPtr report(raw);
  check(glosa_report_write(report.get(), dir.c_str()), "writing report");
  return report;
}

void add_common(CLI::App * cmd, CommonOptions & o, bool with_seed)
{
  cmd->add_option("--config,-c", o.config_path, "scenario YAML (or a run manifest.json)");
  if (with_seed) {
    cmd->add_option("--seed", o.seed, "demand seed override");
    cmd->add_option("--density", o.density, "density override: low, medium or high");
  }
  cmd->add_option("--capacity", o.capacity, "CVs per advisory module")->check(CLI::PositiveNumber);
  cmd->add_option("--latency-profile", o.latency_profile, "default, fast, slow or ideal");
  cmd->add_option("--duration", o.duration, "run length override, seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--out,-o", o.out, "output directory (default: run.output_dir)");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Signalized-corridor simulator with a cloud speed-advisory pipeline"};
  app.set_version_flag("--version", std::string(glosa_version()));
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string mode = "both";
  auto * run_cmd = app.add_subcommand("run", "run one scenario (baseline, advised, or both plus a report)");
  add_common(run_cmd, run_opts, true);
  run_cmd->add_option("--mode,-m", mode, "baseline, advised or both")
    ->check(CLI::IsMember({"baseline", "advised", "both"}));

  std::string base_dir;
  std::string adv_dir;
  std::string cmp_out;
  auto * cmp_cmd = app.add_subcommand("compare", "compare a saved baseline run with a saved advised run");
  cmp_cmd->add_option("--baseline", base_dir, "baseline run directory")->required();
  cmp_cmd->add_option("--advised", adv_dir, "advised run directory")->required();
  cmp_cmd->add_option("--out,-o", cmp_out, "report directory (default: the advised run directory)");

  CommonOptions sweep_opts;
  int jobs = 1;
  auto * sweep_cmd = app.add_subcommand("sweep", "run every density/seed cell of the sweep section");
  add_common(sweep_cmd, sweep_opts, false);
  sweep_cmd->add_option("--jobs,-j", jobs, "cells in flight")->check(CLI::PositiveNumber);

  CommonOptions val_opts;
  bool print_yaml = false;
  auto * val_cmd = app.add_subcommand("validate", "check a config and print its hash");
  val_cmd->add_option("--config,-c", val_opts.config_path, "scenario YAML")->required();
  val_cmd->add_flag("--print", print_yaml, "also print the canonical config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) {
      ConfigPtr config = load(run_opts);
      const std::filesystem::path dir = out_dir(run_opts, config.get());
      if (mode == "both") {
        RunPtr base = run_one(config.get(), "baseline", dir / "baseline");
        RunPtr adv = run_one(config.get(), "advised", dir / "advised");
        ReportPtr report = compare_and_write(base.get(), adv.get(), dir.string());
        print_summary(report.get());
      } else {
        run_one(config.get(), mode.c_str(), dir);
      }
    } else if (*cmp_cmd) {
      glosa_run * b = nullptr;
      glosa_run * a = nullptr;
      check(glosa_run_load(base_dir.c_str(), &b), "loading " + base_dir);
      RunPtr base(b);
      check(glosa_run_load(adv_dir.c_str(), &a), "loading " + adv_dir);
      RunPtr adv(a);
      const std::string dir = cmp_out.empty() ? adv_dir : cmp_out;
      ReportPtr report = compare_and_write(base.get(), adv.get(), dir);
      print_summary(report.get());
      std::printf("report -> %s\n", dir.c_str());
    } else if (*sweep_cmd) {
      ConfigPtr config = load(sweep_opts);
      const std::string dir = out_dir(sweep_opts, config.get());
      std::size_t done = 0;
      std::size_t failed = 0;
      check(glosa_sweep(config.get(), dir.c_str(), jobs, &done, &failed), "sweep");
      std::printf("sweep: %zu cells done, %zu failed -> %s\n", done, failed, dir.c_str());
      if (failed > 0) {
        std::fprintf(stderr, "see %s/failures.txt\n", dir.c_str());
        return kExitFailure;
      }
    } else if (*val_cmd) {
      ConfigPtr config = load(val_opts);
      char * hash = nullptr;
      check(glosa_config_hash(config.get(), &hash), "hash");
      std::printf("ok %s\n", take_string(hash).c_str());
      if (print_yaml) {
        char * yaml = nullptr;
        check(glosa_config_to_yaml(config.get(), &yaml), "yaml");
        std::printf("%s", take_string(yaml).c_str());
      }
    }
  } catch (const Failure & f) {
    std::fprintf(stderr, "glosa: %s\n", f.what());
    const bool usage = f.status == GLOSA_ERR_CONFIG || f.status == GLOSA_ERR_INVALID_ARGUMENT;
    return usage ? kExitUsage : kExitFailure;
  }
  return 0;
}
