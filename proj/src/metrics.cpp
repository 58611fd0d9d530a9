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

#include "glosa/metrics.hpp"

#include "glosa/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace glosa
{

double stopped_delay(
  std::span<const TrajectoryRow> rows, double corridor_length, double dt, double threshold)
{
  std::size_t stopped = 0;
  for (const auto & r : rows) {
    if (r.speed <= threshold && r.x < corridor_length) {
      ++stopped;
    }
  }
  return dt * static_cast<double>(stopped);
}

std::optional<double> travel_time(std::span<const TrajectoryRow> rows, double corridor_length)
{
  if (rows.empty() || rows.back().x < corridor_length) {
    return std::nullopt;
  }
  return rows.back().t - rows.front().t;
}

double ttc(double gap, double follow_speed, double lead_speed)
{
  if (follow_speed > lead_speed) {
    return gap / (follow_speed - lead_speed);
  }
  return kInfinity;
}

std::vector<double> ttc_series(std::span<const TrajectoryRow> rows, double corridor_length)
{
  std::vector<double> out(rows.size(), kInfinity);
  // Group by (t, lane), most downstream first.
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto & ra = rows[a];
    const auto & rb = rows[b];
    return std::tie(ra.t, ra.lane, rb.x, ra.id) < std::tie(rb.t, rb.lane, ra.x, rb.id);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto & ahead = rows[order[k - 1]];
    const auto & row = rows[order[k]];
    if (ahead.t != row.t || ahead.lane != row.lane || row.x >= corridor_length ||
        !std::isfinite(row.gap)) {
      continue;
    }
    out[order[k]] = ttc(row.gap, row.speed, ahead.speed);
  }
  return out;
}

double tit(std::span<const double> ttc_values, double ttc_star, double dt)
{
  double sum = 0.0;
  for (const double v : ttc_values) {
    if (v >= 0.0 && v <= ttc_star) {
      sum += (ttc_star - v) * dt;
    }
  }
  return sum;
}

namespace
{

std::map<int, std::vector<TrajectoryRow>> by_vehicle(std::span<const TrajectoryRow> rows)
{
  std::map<int, std::vector<TrajectoryRow>> out;
  for (const auto & r : rows) {
    out[r.id].push_back(r);
  }
  for (auto & [id, v] : out) {
    (void)id;
    std::stable_sort(v.begin(), v.end(), [](const auto & a, const auto & b) { return a.t < b.t; });
  }
  return out;
}

}  // namespace

std::vector<VehicleMoe> per_vehicle(
  std::span<const TrajectoryRow> rows, double corridor_length, const MetricsParams & params)
{
  std::vector<VehicleMoe> out;
  for (const auto & [id, traj] : by_vehicle(rows)) {
    out.push_back(VehicleMoe{
      id, stopped_delay(traj, corridor_length, params.dt, params.stop_threshold),
      travel_time(traj, corridor_length)});
  }
  return out;
}

RunMoe summarize(std::span<const TrajectoryRow> rows, double corridor_length, const MetricsParams & params)
{
  RunMoe m;
  double delay_sum = 0.0;
  double travel_sum = 0.0;
  for (const auto & v : per_vehicle(rows, corridor_length, params)) {
    ++m.vehicles;
    delay_sum += v.stopped_delay;
    if (v.travel_time) {
      ++m.exited;
      travel_sum += *v.travel_time;
    }
  }
  m.mean_stopped_delay = m.vehicles > 0 ? delay_sum / m.vehicles : 0.0;
  m.mean_travel_time = m.exited > 0 ? travel_sum / m.exited : 0.0;
  const auto series = ttc_series(rows, corridor_length);
  m.total_tit = tit(series, params.ttc_star, params.dt);
  return m;
}

std::optional<double> percent_reduction(double baseline, double advised)
{
  if (!(baseline > 0.0)) {
    return std::nullopt;
  }
  return 100.0 * (baseline - advised) / baseline;
}

MoeReport moe_report(
  std::span<const TrajectoryRow> baseline, std::span<const TrajectoryRow> advised,
  double corridor_length, const MetricsParams & params, std::string density)
{
  std::set<int> base_ids;
  std::set<int> adv_ids;
  for (const auto & r : baseline) {
    base_ids.insert(r.id);
  }
  for (const auto & r : advised) {
    adv_ids.insert(r.id);
  }
  if (base_ids != adv_ids) {
    throw MismatchError("moe_report: baseline and advised runs cover different CVs");
  }
  MoeReport rep;
  rep.density = std::move(density);
  rep.baseline = summarize(baseline, corridor_length, params);
  rep.advised = summarize(advised, corridor_length, params);
  rep.stopped_delay_reduction =
    percent_reduction(rep.baseline.mean_stopped_delay, rep.advised.mean_stopped_delay);
  rep.travel_time_reduction =
    percent_reduction(rep.baseline.mean_travel_time, rep.advised.mean_travel_time);
  rep.tit_reduction = percent_reduction(rep.baseline.total_tit, rep.advised.total_tit);
  return rep;
}

double quantile(std::vector<double> values, double q)
{
  if (values.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxStats box_stats(std::span<const double> values)
{
  BoxStats b;
  b.count = values.size();
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    b.min = b.q1 = b.median = b.q3 = b.max = b.mean = nan;
    return b;
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  b.min = v.front();
  b.max = v.back();
  b.q1 = quantile(v, 0.25);
  b.median = quantile(v, 0.5);
  b.q3 = quantile(v, 0.75);
  b.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return b;
}

}  // namespace glosa
