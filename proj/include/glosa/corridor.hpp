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

#ifndef GLOSA__CORRIDOR_HPP_
#define GLOSA__CORRIDOR_HPP_

#include "glosa/units.hpp"

#include <string_view>
#include <vector>

namespace glosa
{

/// Static geometry of the instrumented travel direction.
struct RoadwaySpec
{
  double length = 1.5 * kMetersPerMile;
  int lanes_per_direction = 2;
  double speed_limit = mph_to_mps(35.0);
  /// Stop-line position of every signal, measured from the corridor entry.
  std::vector<double> stop_lines{500.0, 1200.0, 1900.0};
  /// Leader advisories never go further than this below the speed limit.
  double advisory_floor_offset = mph_to_mps(10.0);

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

/// Fixed-time plan for the corridor approach of one signal.
///
/// The approach sees green, then yellow, then all-red, then stays red while the
/// conflicting approaches are served (`cross_phase_total`). The cycle starts at
/// the beginning of green, shifted by `cycle_offset`.
struct SignalTimingPlan
{
  double green = 30.0;
  double yellow = 3.0;
  double all_red = 2.0;
  double cross_phase_total = 25.0;
  double cycle_offset = 0.0;

  double cycle() const { return green + yellow + all_red + cross_phase_total; }
  /// Red as seen by this approach: all-red plus the conflicting phases.
  double red() const { return all_red + cross_phase_total; }

  void validate() const;
};

enum class Interval { Green, Yellow, Red };

std::string_view to_string(Interval interval);

struct SignalPhaseState
{
  Interval interval = Interval::Green;
  double remaining = 0.0;
  int signal_id = 0;
};

enum class PlatoonCase { I, II, Unassigned };

std::string_view to_string(PlatoonCase c);

/// Phase shown by a fixed-time controller at time `t` (t >= 0).
SignalPhaseState phase_at(const SignalTimingPlan & plan, double t, int signal_id = 0);

/// Time available to a platoon to pass the stop line.
///
/// Case I is the remaining green and is only defined while green; requesting it
/// in any other interval throws std::invalid_argument. Case II is the time until
/// the next green starts: the residue of the current interval plus every
/// non-green interval that follows before that green.
double available_time(
  const SignalPhaseState & state, const SignalTimingPlan & plan, PlatoonCase platoon_case);

}  // namespace glosa

#endif  // GLOSA__CORRIDOR_HPP_
