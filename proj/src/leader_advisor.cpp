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

#include "glosa/leader_advisor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glosa
{

double time_to_line(
  double speed, double target, double distance, const VehicleCapabilities & caps)
{
  if (target == speed) {
    return distance / target;
  }
  const double a = target > speed ? caps.max_accel : caps.max_brake;
  const double change_time = (target - speed) / a;
  const double change_distance = (target * target - speed * speed) / (2.0 * a);
  if (change_distance <= distance) {
    return change_time + (distance - change_distance) / target;
  }
  // The line comes before the speed change completes.
  return (-speed + std::sqrt(speed * speed + 2.0 * a * distance)) / a;
}

double leader_delay(
  double advised, double leader_speed, double distance, double speed_limit,
  const VehicleCapabilities & caps)
{
  if (!(advised > 0.0)) {
    throw std::invalid_argument("leader_delay: advised speed must be positive");
  }
  if (!(speed_limit > 0.0) || !(distance > 0.0)) {
    throw std::invalid_argument("leader_delay: speed limit and distance must be positive");
  }
  if (advised == speed_limit) {
    return 0.0;
  }
  return time_to_line(leader_speed, advised, distance, caps) -
         time_to_line(leader_speed, speed_limit, distance, caps);
}

AdvisoryBounds advisory_bounds(
  double distance, double available_time, double speed_limit, double floor_offset)
{
  if (!(available_time > 0.0)) {
    throw std::invalid_argument("advisory_bounds: available time must be positive");
  }
  const double lower = speed_limit - floor_offset;
  const double arrival_speed = distance / available_time;
  if (arrival_speed < lower) {
    return {lower, lower};
  }
  return {lower, std::min(speed_limit, arrival_speed)};
}

double minimize_leader_delay(
  const AdvisoryBounds & bounds, double leader_speed, double distance, double speed_limit,
  const VehicleCapabilities & caps, double resolution)
{
  if (!(resolution > 0.0) || bounds.upper < bounds.lower) {
    throw std::invalid_argument("minimize_leader_delay: invalid bounds or resolution");
  }
  double best = bounds.upper;
  double best_delay = leader_delay(best, leader_speed, distance, speed_limit, caps);
  const auto steps = static_cast<long>(std::floor((bounds.upper - bounds.lower) / resolution));
  for (long i = 1; i <= steps + 1; ++i) {
    const double s = i <= steps ? bounds.upper - static_cast<double>(i) * resolution : bounds.lower;
    const double d = leader_delay(s, leader_speed, distance, speed_limit, caps);
    if (d < best_delay) {
      best = s;
      best_delay = d;
    }
  }
  return best;
}

SpeedAdvisory optimize_leader(
  const Platoon & platoon, double available_time, const RoadwaySpec & roadway,
  const VehicleCapabilities & caps, double now)
{
  if (platoon.members.empty()) {
    throw std::invalid_argument("optimize_leader: empty platoon");
  }
  const auto & lead = platoon.leader();
  SpeedAdvisory adv;
  adv.cv_id = lead.bsm.id;
  adv.generated_at = now;
  adv.signal_id = platoon.signal_id;
  adv.role = AdvisoryRole::Leader;

  switch (platoon.platoon_case) {
    case PlatoonCase::I:
      adv.advised_speed = roadway.speed_limit;
      return adv;
    case PlatoonCase::II: {
      const auto bounds = advisory_bounds(
        lead.distance, available_time, roadway.speed_limit, roadway.advisory_floor_offset);
      adv.advised_speed = bounds.lower == bounds.upper
                            ? bounds.lower
                            : minimize_leader_delay(
                                bounds, lead.bsm.speed, lead.distance, roadway.speed_limit, caps);
      return adv;
    }
    case PlatoonCase::Unassigned:
      break;
  }
  throw std::invalid_argument("optimize_leader: platoon has no case");
}

}  // namespace glosa
