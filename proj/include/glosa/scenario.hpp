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

#ifndef GLOSA__SCENARIO_HPP_
#define GLOSA__SCENARIO_HPP_

#include "glosa/cloud_emulator.hpp"
#include "glosa/config.hpp"
#include "glosa/metrics.hpp"
#include "glosa/traffic_sim.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glosa
{

enum class RunMode { Baseline, Advised };

std::string_view to_string(RunMode mode);
std::optional<RunMode> parse_mode(std::string_view text);

/// Link between an applied advisory and the BSM it came from.
struct AuditEntry
{
  double t = 0.0;  // tick the advisory was applied from
  int cv_id = 0;
  int signal_id = 0;
  AdvisoryRole role = AdvisoryRole::Leader;
  double advised_speed = 0.0;
  double bsm_time = 0.0;
  double bsm_speed = 0.0;
  double generated_at = 0.0;
  double delivered_at = 0.0;
};

struct RunStats
{
  std::size_t ticks = 0;
  std::size_t cluster_runs = 0;
  std::size_t skipped_clusters = 0;
  std::size_t busy_clusters = 0;  // clusters that had at least one CV to advise
  double mean_busy_processing_ms = 0.0;
  double max_processing_ms = 0.0;
  std::size_t max_module_members = 0;
  std::size_t module_count = 0;
  std::size_t deliveries = 0;
  std::size_t applied = 0;
  int case1_platoons = 0;
  int case2_platoons = 0;
  int optimal_solves = 0;
  int softened_solves = 0;
  std::size_t faults = 0;
};

struct RunOutputs
{
  ScenarioConfig config;
  RunMode mode = RunMode::Baseline;
  std::vector<TrajectoryRow> trajectory;
  std::vector<LatencyRecord> latency;
  std::vector<AuditEntry> audit;
  std::vector<double> busy_processing_ms;  // one per cluster run with CVs
  std::vector<FaultEvent> faults;
  std::string arrival_hash;
  RunStats stats;
};

/// FNV-1a 64 over ids, lanes and exact arrival times.
std::string arrival_hash(const std::vector<Arrival> & arrivals);

/// Arrival schedule the config produces (arrivals start after the warm-up).
std::vector<Arrival> arrivals_for(const ScenarioConfig & config);

/// One deterministic run. Baseline never touches the cloud pipeline.
RunOutputs run_scenario(const ScenarioConfig & config, RunMode mode);

struct LatencySummary
{
  std::size_t count = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
  double fraction_over_1000ms = 0.0;
  double mean_upload_ms = 0.0;
  double mean_processing_ms = 0.0;
  double mean_download_ms = 0.0;
  double mean_staleness_ms = 0.0;
};

/// Throws MismatchError if `records` is empty.
LatencySummary summarize_latency(const std::vector<LatencyRecord> & records);

struct Comparison
{
  std::string density;
  std::uint64_t seed = 0;
  std::string config_hash;
  MoeReport moe;
  LatencySummary latency;
  RunStats advised_stats;
};

/// Paired comparison; throws MismatchError when the runs are not paired
/// (different arrivals or seeds) or the advised run has no latency records.
Comparison compare(const RunOutputs & baseline, const RunOutputs & advised);

/// Writes trajectory.csv, latency.csv (advised only) and manifest.json.
void write_run(const RunOutputs & run, const std::filesystem::path & dir);
/// Reads back what write_run produced.
RunOutputs load_run(const std::filesystem::path & dir);

std::string run_manifest_json(const RunOutputs & run);

std::string comparison_json(const Comparison & c);
std::string comparison_csv(const std::vector<Comparison> & rows);

/// Per-density aggregate across seeds: MoEs pooled over all CVs of all seeds.
struct DensitySummary
{
  std::string density;
  std::size_t cells = 0;
  RunMoe baseline;
  RunMoe advised;
  std::optional<double> stopped_delay_reduction;
  std::optional<double> travel_time_reduction;
  std::optional<double> tit_reduction;
  LatencySummary latency;
  double mean_busy_processing_ms = 0.0;
};

struct SweepResult
{
  std::vector<Comparison> cells;  // density-major, then seed, in sweep order
  std::vector<DensitySummary> summary;
  std::vector<std::string> failures;  // "density/seed: message"
};

/// Runs every (density, seed) pair of `config.sweep` with up to `jobs` cells
/// in flight, writing each cell below `out_dir` as it completes, then the
/// combined report files (report.json, report.csv, summary.csv,
/// latency_summary.csv, plot_data.csv). Failed cells are listed in `failures`.
SweepResult sweep(const ScenarioConfig & config, const std::filesystem::path & out_dir, int jobs);

/// Box-chart quantiles per density and mode for stopped delay, travel time,
/// end-to-end latency and cluster processing time.
std::string plot_data_csv(const std::vector<RunOutputs> & runs);

}  // namespace glosa

#endif  // GLOSA__SCENARIO_HPP_
