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

#ifndef GLOSA__LEADER_ADVISOR_HPP_
#define GLOSA__LEADER_ADVISOR_HPP_

#include "glosa/advisory.hpp"
#include "glosa/platooning.hpp"
#include "glosa/traffic_sim.hpp"

#include <utility>

namespace glosa
{

/// Time for a leader at `speed` to cover `distance` when it first changes
/// speed to `target` at a_Acc (speeding up) or a_Brk (slowing down) and then
/// holds it. If the line is reached before `target`, the time is that of the
/// uninterrupted speed change up to the line.
double time_to_line(
  double speed, double target, double distance, const VehicleCapabilities & caps);

/// Extra time to reach the line when driving at `advised` instead of the speed limit.
/// Throws std::invalid_argument unless advised, speed limit and distance are positive.
double leader_delay(
  double advised, double leader_speed, double distance, double speed_limit,
  const VehicleCapabilities & caps);

struct AdvisoryBounds
{
  double lower = 0.0;
  double upper = 0.0;
};

/// Feasible leader speeds: [S_max - floor_offset, min(S_max, d / t_avail)],
/// collapsing to the lower bound when d / t_avail falls below it.
AdvisoryBounds advisory_bounds(
  double distance, double available_time, double speed_limit, double floor_offset);

/// 1-D grid minimization of leader_delay on [lower, upper]. The grid is
/// anchored at `upper` and walks down in `resolution` steps, ties resolved
/// toward the faster speed.
double minimize_leader_delay(
  const AdvisoryBounds & bounds, double leader_speed, double distance, double speed_limit,
  const VehicleCapabilities & caps, double resolution = 0.01);

/// Speed advisory for the platoon leader: the speed limit for case I, the
/// delay-minimizing bounded speed for case II.
SpeedAdvisory optimize_leader(
  const Platoon & platoon, double available_time, const RoadwaySpec & roadway,
  const VehicleCapabilities & caps, double now);

}  // namespace glosa

#endif  // GLOSA__LEADER_ADVISOR_HPP_
