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

#ifndef GLOSA__METRICS_HPP_
#define GLOSA__METRICS_HPP_

#include "glosa/traffic_sim.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glosa
{

struct MetricsParams
{
  double stop_threshold = 0.1;  // m/s; at or below counts as stopped
  double ttc_star = 2.0;        // s
  double dt = 1.0;              // s, row spacing
};

/// dt times the number of rows at or below the stop threshold while short of the exit.
double stopped_delay(
  std::span<const TrajectoryRow> rows, double corridor_length, double dt, double threshold = 0.1);

/// Exit row time minus entry row time; empty if the CV never reached `corridor_length`.
std::optional<double> travel_time(std::span<const TrajectoryRow> rows, double corridor_length);

/// g / (S_follow - S_lead) when the follower closes in, otherwise infinity.
double ttc(double gap, double follow_speed, double lead_speed);

/// TTC of every row against the row ahead of it in the same lane and tick.
/// Entries line up with `rows`; rows at or past the exit get infinity.
std::vector<double> ttc_series(std::span<const TrajectoryRow> rows, double corridor_length);

/// Sum of (ttc_star - TTC) * dt over samples with 0 <= TTC <= ttc_star.
double tit(std::span<const double> ttc_values, double ttc_star, double dt);

struct VehicleMoe
{
  int id = 0;
  double stopped_delay = 0.0;
  std::optional<double> travel_time;
};

/// Per-CV stopped delay and travel time, in id order.
std::vector<VehicleMoe> per_vehicle(
  std::span<const TrajectoryRow> rows, double corridor_length, const MetricsParams & params);

/// MoEs of one run.
struct RunMoe
{
  int vehicles = 0;
  int exited = 0;
  double mean_stopped_delay = 0.0;  // s per CV, all CVs
  double mean_travel_time = 0.0;    // s per CV, exited CVs only
  double total_tit = 0.0;           // s, all CVs
};

RunMoe summarize(std::span<const TrajectoryRow> rows, double corridor_length, const MetricsParams & params);

/// (baseline - advised) / baseline in percent; empty when baseline <= 0.
std::optional<double> percent_reduction(double baseline, double advised);

struct MoeReport
{
  std::string density;
  RunMoe baseline;
  RunMoe advised;
  std::optional<double> stopped_delay_reduction;
  std::optional<double> travel_time_reduction;
  std::optional<double> tit_reduction;
};

/// Paired comparison. Throws MismatchError if the runs saw different CVs.
MoeReport moe_report(
  std::span<const TrajectoryRow> baseline, std::span<const TrajectoryRow> advised,
  double corridor_length, const MetricsParams & params, std::string density = {});

/// Linear-interpolation quantile (q in [0, 1]) of an unsorted sample; NaN if empty.
double quantile(std::vector<double> values, double q);

/// Five-number summary plus mean, as drawn by a box chart.
struct BoxStats
{
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

BoxStats box_stats(std::span<const double> values);

}  // namespace glosa

#endif  // GLOSA__METRICS_HPP_
