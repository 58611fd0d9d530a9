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

#include "glosa/traffic_sim.hpp"

#include "glosa/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace glosa
{

namespace
{
constexpr double kGapTolerance = 1e-9;

// Distance covered when braking from `v` by `bd` per step of length `dt`
// until standstill, with positions advanced at the step-average speed.
// Piecewise linear in v: (n + 1/2) v - bd n (n + 1) / 2 per unit step.
double braking_distance(double v, double bd, double dt)
{
  if (v <= 0.0) {
    return 0.0;
  }
  const double n = std::floor(v / bd);
  return dt * ((n + 0.5) * v - 0.5 * bd * n * (n + 1.0));
}

// Largest v >= 0 with v dt / 2 + braking_distance(v) <= budget, or -1 when even
// v = 0 overshoots. The left side is increasing and linear on [n bd, (n+1) bd).
double max_speed_within(double budget, double bd, double dt)
{
  if (budget < 0.0) {
    return -1.0;
  }
  if (!std::isfinite(budget)) {
    return kInfinity;
  }
  // Segment n starts at dt bd n (n + 1) / 2.
  const double k = budget / (dt * bd);
  double n = std::floor(0.5 * (std::sqrt(1.0 + 8.0 * k) - 1.0));
  while (n > 0.0 && 0.5 * n * (n + 1.0) > k) {
    n -= 1.0;
  }
  while (0.5 * (n + 1.0) * (n + 2.0) <= k) {
    n += 1.0;
  }
  return (budget / dt + 0.5 * bd * n * (n + 1.0)) / (n + 1.0);
}

// Largest v >= 0 whose braking distance fits in `room`.
double max_speed_stopping_within(double room, double bd, double dt)
{
  if (room <= 0.0) {
    return 0.0;
  }
  // braking_distance(v) = dt (n + 1/2) v - dt bd n (n + 1) / 2 on segment n.
  double lo = 0.0;
  double hi = bd;
  double n = 0.0;
  while (braking_distance(hi, bd, dt) <= room) {
    lo = hi;
    hi += bd;
    n += 1.0;
  }
  const double v = (room / dt + 0.5 * bd * n * (n + 1.0)) / (n + 0.5);
  return std::clamp(v, lo, hi);
}

}  // namespace

void VehicleCapabilities::validate() const
{
  if (!(max_accel > 0.0)) {
    throw ConfigError("vehicle.max_accel", "must be positive");
  }
  if (!(max_brake < 0.0)) {
    throw ConfigError("vehicle.max_brake", "must be negative");
  }
}

void CarFollowingParams::validate() const
{
  if (!(reaction_time > 0.0)) {
    throw ConfigError("vehicle.reaction_time", "must be positive");
  }
  if (!(comfortable_decel > 0.0)) {
    throw ConfigError("vehicle.comfortable_decel", "must be positive");
  }
  if (!(vehicle_length > 0.0)) {
    throw ConfigError("vehicle.length", "must be positive");
  }
  if (!(min_gap >= 0.0)) {
    throw ConfigError("vehicle.min_gap", "must be non-negative");
  }
}

std::string_view to_string(DensityClass density)
{
  switch (density) {
    case DensityClass::Low:
      return "low";
    case DensityClass::Medium:
      return "medium";
    case DensityClass::High:
      return "high";
  }
  return "?";
}

std::optional<DensityClass> parse_density(std::string_view text)
{
  if (text == "low") {
    return DensityClass::Low;
  }
  if (text == "medium") {
    return DensityClass::Medium;
  }
  if (text == "high") {
    return DensityClass::High;
  }
  return std::nullopt;
}

double nominal_flow(DensityClass density)
{
  switch (density) {
    case DensityClass::Low:
      return 633.0;
    case DensityClass::Medium:
      return 1267.0;
    case DensityClass::High:
      return 1900.0;
  }
  return 0.0;
}

void TrafficDemand::validate() const
{
  if (vehicle_count <= 0) {
    throw ConfigError("demand.vehicle_count", "must be positive");
  }
  if (!(flow > 0.0)) {
    throw ConfigError("demand.flow", "must be positive");
  }
  if (!(min_headway >= 0.0) || !(min_headway < 3600.0 / flow)) {
    throw ConfigError("demand.min_headway", "must be non-negative and below the mean headway");
  }
  if (!(start_time >= 0.0)) {
    throw ConfigError("demand.start_time", "must be non-negative");
  }
}

std::vector<Arrival> spawn_traffic(const TrafficDemand & demand, int lanes)
{
  demand.validate();
  if (lanes < 1) {
    throw std::invalid_argument("spawn_traffic: at least one lane is required");
  }
  const double mean_headway = 3600.0 / demand.flow;
  std::mt19937_64 rng(demand.seed);
  std::exponential_distribution<double> excess(1.0 / (mean_headway - demand.min_headway));

  std::vector<Arrival> arrivals;
  arrivals.reserve(static_cast<std::size_t>(demand.vehicle_count));
  std::vector<double> clock(static_cast<std::size_t>(lanes), demand.start_time);
  for (int k = 0; k < demand.vehicle_count; ++k) {
    const int lane = k % lanes;
    auto & t = clock[static_cast<std::size_t>(lane)];
    const double headway = demand.min_headway + excess(rng);
    // The first vehicle of a lane arrives one headway after the start time.
    t += headway;
    arrivals.push_back(Arrival{0, lane, t});
  }
  std::stable_sort(arrivals.begin(), arrivals.end(), [](const Arrival & a, const Arrival & b) {
    return a.time < b.time || (a.time == b.time && a.lane < b.lane);
  });
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    arrivals[i].id = static_cast<int>(i);
  }
  return arrivals;
}

double safe_speed(double speed, double pred_speed, double gap, double tau, double b)
{
  (void)speed;  // the Krauss safe speed does not depend on the follower's own speed
  if (!std::isfinite(gap)) {
    return kInfinity;
  }
  const double bt = b * tau;
  const double v = -bt + std::sqrt(bt * bt + pred_speed * pred_speed + 2.0 * b * std::max(gap, 0.0));
  return std::max(v, 0.0);
}

World::World(
  RoadwaySpec roadway, std::vector<SignalTimingPlan> plans, VehicleCapabilities caps,
  CarFollowingParams params, std::vector<Arrival> arrivals, double start_time)
: roadway_(std::move(roadway)),
  plans_(std::move(plans)),
  caps_(caps),
  params_(params),
  time_(start_time)
{
  roadway_.validate();
  caps_.validate();
  params_.validate();
  if (plans_.size() != roadway_.stop_lines.size()) {
    throw std::invalid_argument("World: one signal plan per stop line is required");
  }
  const auto n_lanes = static_cast<std::size_t>(roadway_.lanes_per_direction);
  lanes_.resize(n_lanes);
  pending_.resize(n_lanes);
  std::stable_sort(arrivals.begin(), arrivals.end(), [](const Arrival & a, const Arrival & b) {
    return a.time < b.time;
  });
  for (const auto & a : arrivals) {
    if (a.lane < 0 || static_cast<std::size_t>(a.lane) >= n_lanes) {
      throw std::invalid_argument("World: arrival lane out of range");
    }
    pending_[static_cast<std::size_t>(a.lane)].push_back(a);
  }
  insert_arrivals();
}

std::size_t World::active_count() const
{
  std::size_t n = 0;
  for (const auto & lane : lanes_) {
    n += lane.size();
  }
  return n;
}

std::size_t World::pending_count() const
{
  std::size_t n = 0;
  for (const auto & lane : pending_) {
    n += lane.size();
  }
  return n;
}

int World::next_signal_index(double x) const
{
  const auto & lines = roadway_.stop_lines;
  // A vehicle standing exactly on a stop line has not passed it yet.
  return static_cast<int>(std::lower_bound(lines.begin(), lines.end(), x) - lines.begin());
}

void World::insert_arrivals()
{
  const double tau = params_.reaction_time;
  const double b = params_.comfortable_decel;
  for (std::size_t l = 0; l < lanes_.size(); ++l) {
    auto & queue = pending_[l];
    auto & lane = lanes_[l];
    while (!queue.empty() && queue.front().time <= time_ + 1e-9) {
      double gap = kInfinity;
      double speed = roadway_.speed_limit;
      if (!lane.empty()) {
        const auto & last = lane.back().state;
        gap = last.x - last.length;
        if (gap < params_.min_gap) {
          break;  // entry blocked; retry next tick
        }
        speed = std::min(speed, safe_speed(speed, last.speed, gap - params_.min_gap, tau, b));
        // Enter no faster than the speed that can still stop behind the
        // predecessor braking as hard as it may.
        const double room = gap - params_.min_gap + braking_distance(last.speed, b * step_, step_);
        speed = std::min(speed, max_speed_stopping_within(room, b * step_, step_));
      }
      Vehicle v;
      v.state.id = queue.front().id;
      v.state.lane = static_cast<int>(l);
      v.state.x = 0.0;
      v.state.speed = speed;
      v.state.gap = gap;
      v.state.length = params_.vehicle_length;
      v.entered_at = time_;
      v.next_signal = next_signal_index(0.0);
      lane.push_back(v);
      queue.pop_front();
    }
  }
}

void World::update_gaps(std::deque<Vehicle> & lane)
{
  for (std::size_t i = 0; i < lane.size(); ++i) {
    auto & s = lane[i].state;
    if (i == 0) {
      s.gap = kInfinity;
      continue;
    }
    const auto & ahead = lane[i - 1].state;
    s.gap = ahead.x - ahead.length - s.x;
    if (s.gap < -kGapTolerance) {
      std::ostringstream msg;
      msg << "collision at t=" << time_ << ": CV " << s.id << " overlaps CV " << ahead.id
          << " (gap " << s.gap << " m, lane " << s.lane << ")";
      throw SimulationError(msg.str());
    }
    s.gap = std::max(s.gap, 0.0);
  }
}

void World::step_baseline(double dt) { advance(nullptr, dt); }

void World::step_advised(const std::map<int, SpeedAdvisory> & advisories, double dt)
{
  advance(&advisories, dt);
}

void World::advance(const std::map<int, SpeedAdvisory> * advisories, double dt)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("World::advance: dt must be positive");
  }
  just_exited_.clear();
  step_ = dt;
  const double s_max = roadway_.speed_limit;
  const double tau = params_.reaction_time;
  const double b = params_.comfortable_decel;
  const auto n_signals = static_cast<int>(plans_.size());

  std::vector<double> next_speed;
  std::vector<double> next_disp;
  for (auto & lane : lanes_) {
    next_speed.assign(lane.size(), 0.0);
    next_disp.assign(lane.size(), 0.0);
    for (std::size_t i = 0; i < lane.size(); ++i) {
      auto & veh = lane[i];
      const double v = veh.state.speed;

      double desired = std::min(s_max, v + caps_.max_accel * dt);
      if (advisories != nullptr) {
        if (const auto it = advisories->find(veh.state.id); it != advisories->end()) {
          desired = std::clamp(
            it->second.advised_speed, v + caps_.max_brake * dt, v + caps_.max_accel * dt);
          desired = std::min(desired, s_max);
        }
      }

      const double bd = b * dt;
      // Krauss is the comfort law; it never asks for more than b of braking.
      if (i > 0) {
        const double vp = lane[i - 1].state.speed;
        const double g = veh.state.gap - params_.min_gap;
        desired = std::min(desired, std::max(safe_speed(v, vp, std::max(g, 0.0), tau, b), v - bd));
      }

      // Hard caps: after this step the vehicle must still be able to stop,
      // braking by b per step, behind where the (already moved) vehicle ahead
      // could stop, and before a line it decided to stop at.
      double hard = kInfinity;
      if (i > 0) {
        const auto & ahead = lane[i - 1].state;
        const double ahead_stop =
          ahead.x + next_disp[i - 1] - ahead.length - params_.min_gap + braking_distance(next_speed[i - 1], bd, dt);
        hard = max_speed_within(ahead_stop - veh.state.x - 0.5 * v * dt, bd, dt);
      }

      double line_distance = kInfinity;
      if (veh.next_signal < n_signals) {
        const auto k = static_cast<std::size_t>(veh.next_signal);
        const auto phase = phase_at(plans_[k], time_, veh.next_signal);
        if (phase.interval == Interval::Green) {
          veh.decision = LineDecision::Undecided;
        } else {
          const double d = roadway_.stop_lines[k] - veh.state.x;
          const double v_line = max_speed_within(d - 0.5 * v * dt, bd, dt);
          if (veh.decision == LineDecision::Undecided) {
            veh.decision = v_line >= std::max(v - bd, 0.0) - 1e-9 ? LineDecision::Stop : LineDecision::Pass;
          }
          if (veh.decision == LineDecision::Stop) {
            desired = std::min(desired, std::max(safe_speed(v, 0.0, std::max(d, 0.0), tau, b), v - bd));
            hard = std::min(hard, v_line);
            line_distance = d;
          }
        }
      }

      double v_new = std::max(std::min(desired, hard), 0.0);
      double disp = 0.5 * (v + v_new) * dt;

      // Last resort when the caps cannot be met: never end the step closer
      // than min_gap to the vehicle ahead or past a line we stop at; the
      // vehicle then stops short inside the step.
      double allowed = kInfinity;
      if (i > 0) {
        allowed = veh.state.gap - params_.min_gap + next_disp[i - 1];
      }
      if (std::isfinite(line_distance)) {
        allowed = std::min(allowed, line_distance);
      }
      if (disp > allowed) {
        const double capped = 2.0 * allowed / dt - v;
        if (capped >= 0.0) {
          v_new = std::min(v_new, capped);
          disp = 0.5 * (v + v_new) * dt;
        } else {
          v_new = 0.0;
          disp = std::clamp(allowed, 0.0, 0.5 * v * dt);
        }
      }
      next_speed[i] = v_new;
      next_disp[i] = disp;
    }

    for (std::size_t i = 0; i < lane.size(); ++i) {
      auto & veh = lane[i];
      veh.state.x += next_disp[i];
      veh.state.speed = next_speed[i];
      const int k = next_signal_index(veh.state.x);
      if (k != veh.next_signal) {
        veh.next_signal = k;
        veh.decision = LineDecision::Undecided;
      }
    }
  }

  time_ += dt;
  for (auto & lane : lanes_) {
    update_gaps(lane);
    while (!lane.empty() && lane.front().state.x >= roadway_.length) {
      just_exited_.push_back(lane.front().state);
      lane.pop_front();
    }
  }
  insert_arrivals();
}

std::vector<BsmRecord> World::bsm_snapshot() const
{
  std::vector<BsmRecord> out;
  out.reserve(active_count());
  for (const auto & lane : lanes_) {
    for (std::size_t i = 0; i < lane.size(); ++i) {
      const auto & s = lane[i].state;
      out.push_back(BsmRecord{s.id, s.lane, s.x, s.speed, i == 0 ? kInfinity : s.gap, time_});
    }
  }
  return out;
}

std::vector<CvState> World::active_states() const
{
  std::vector<CvState> out;
  out.reserve(active_count());
  for (const auto & lane : lanes_) {
    for (const auto & v : lane) {
      out.push_back(v.state);
    }
  }
  return out;
}

std::vector<CvState> World::states() const
{
  auto out = active_states();
  out.insert(out.end(), just_exited_.begin(), just_exited_.end());
  return out;
}

}  // namespace glosa
