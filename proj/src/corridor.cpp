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

#include "glosa/corridor.hpp"

#include "glosa/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace glosa
{

void RoadwaySpec::validate() const
{
  if (!(length > 0.0)) {
    throw ConfigError("corridor.length", "must be positive");
  }
  if (lanes_per_direction < 1) {
    throw ConfigError("corridor.lanes_per_direction", "must be at least 1");
  }
  if (!(speed_limit > 0.0)) {
    throw ConfigError("corridor.speed_limit", "must be positive");
  }
  if (!(advisory_floor_offset > 0.0) || !(advisory_floor_offset < speed_limit)) {
    throw ConfigError(
      "corridor.advisory_floor_offset", "must lie strictly between 0 and the speed limit");
  }
  if (stop_lines.empty()) {
    throw ConfigError("corridor.stop_lines", "at least one signal is required");
  }
  double previous = 0.0;
  for (std::size_t i = 0; i < stop_lines.size(); ++i) {
    const double x = stop_lines[i];
    if (!(x > previous) || !(x < length)) {
      throw ConfigError(
        "corridor.stop_lines[" + std::to_string(i) + "]",
        "stop lines must be strictly increasing, positive and inside the corridor");
    }
    previous = x;
  }
}

void SignalTimingPlan::validate() const
{
  const auto positive = [](double v, const char * field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(field, "must be a positive duration");
    }
  };
  positive(green, "signal.green");
  positive(yellow, "signal.yellow");
  positive(all_red, "signal.all_red");
  positive(cross_phase_total, "signal.cross_phase_total");
  if (!std::isfinite(cycle_offset)) {
    throw ConfigError("signal.offset", "must be finite");
  }
}

std::string_view to_string(Interval interval)
{
  switch (interval) {
    case Interval::Green:
      return "green";
    case Interval::Yellow:
      return "yellow";
    case Interval::Red:
      return "red";
  }
  return "?";
}

std::string_view to_string(PlatoonCase c)
{
  switch (c) {
    case PlatoonCase::I:
      return "I";
    case PlatoonCase::II:
      return "II";
    case PlatoonCase::Unassigned:
      return "unassigned";
  }
  return "?";
}

SignalPhaseState phase_at(const SignalTimingPlan & plan, double t, int signal_id)
{
  if (t < 0.0) {
    throw std::invalid_argument("phase_at: t must be non-negative");
  }
  const double cycle = plan.cycle();
  double local = std::fmod(t - plan.cycle_offset, cycle);
  if (local < 0.0) {
    local += cycle;
  }

  SignalPhaseState s;
  s.signal_id = signal_id;
  if (local < plan.green) {
    s.interval = Interval::Green;
    s.remaining = plan.green - local;
  } else if (local < plan.green + plan.yellow) {
    s.interval = Interval::Yellow;
    s.remaining = plan.green + plan.yellow - local;
  } else {
    s.interval = Interval::Red;
    s.remaining = cycle - local;
  }
  return s;
}

double available_time(
  const SignalPhaseState & state, const SignalTimingPlan & plan, PlatoonCase platoon_case)
{
  switch (platoon_case) {
    case PlatoonCase::I:
      if (state.interval != Interval::Green) {
        throw std::invalid_argument("available_time: case I requires a green interval");
      }
      return state.remaining;
    case PlatoonCase::II:
      switch (state.interval) {
        case Interval::Green:
          return state.remaining + plan.yellow + plan.red();
        case Interval::Yellow:
          return state.remaining + plan.red();
        case Interval::Red:
          return state.remaining;
      }
      break;
    case PlatoonCase::Unassigned:
      break;
  }
  throw std::invalid_argument("available_time: platoon case must be I or II");
}

}  // namespace glosa
