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

#include "glosa/platooning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace glosa
{

double min_time_to_intersection(
  double speed, double distance, double speed_limit, double max_accel)
{
  if (distance < 0.0 || speed < 0.0 || !(max_accel > 0.0) || !(speed_limit > 0.0)) {
    throw std::invalid_argument("min_time_to_intersection: invalid arguments");
  }
  speed = std::min(speed, speed_limit);
  const double accel_distance = (speed_limit * speed_limit - speed * speed) / (2.0 * max_accel);
  if (distance >= accel_distance) {
    return (speed_limit - speed) / max_accel + (distance - accel_distance) / speed_limit;
  }
  return (-speed + std::sqrt(speed * speed + 2.0 * max_accel * distance)) / max_accel;
}

std::vector<Platoon> identify_platoons(
  const std::vector<BsmRecord> & bsms, double stop_line, const SignalPhaseState & phase,
  const SignalTimingPlan & plan, double speed_limit, double max_accel)
{
  std::map<int, std::vector<PlatoonMember>> by_lane;
  for (const auto & b : bsms) {
    by_lane[b.lane].push_back(PlatoonMember{b, stop_line - b.x});
  }

  const bool green = phase.interval == Interval::Green;
  const double t_case1 = green ? available_time(phase, plan, PlatoonCase::I) : 0.0;
  const double t_case2 = available_time(phase, plan, PlatoonCase::II);

  std::vector<Platoon> out;
  for (auto & [lane, members] : by_lane) {
    std::stable_sort(
      members.begin(), members.end(), [](const PlatoonMember & a, const PlatoonMember & b) {
        return a.distance < b.distance || (a.distance == b.distance && a.bsm.id < b.bsm.id);
      });

    std::size_t next = 0;
    const auto grow = [&](PlatoonCase c, double t_avail) {
      Platoon p;
      p.signal_id = phase.signal_id;
      p.lane = lane;
      p.platoon_case = c;
      p.available_time = t_avail;
      while (next < members.size()) {
        const auto & m = members[next];
        const double t_min =
          min_time_to_intersection(m.bsm.speed, std::max(m.distance, 0.0), speed_limit, max_accel);
        if (t_min > t_avail) {
          break;
        }
        p.members.push_back(m);
        ++next;
      }
      if (!p.members.empty()) {
        out.push_back(std::move(p));
      }
    };

    if (green) {
      grow(PlatoonCase::I, t_case1);
    }
    grow(PlatoonCase::II, t_case2);

    if (next < members.size()) {
      Platoon rest;
      rest.signal_id = phase.signal_id;
      rest.lane = lane;
      rest.platoon_case = PlatoonCase::Unassigned;
      rest.members.assign(members.begin() + static_cast<std::ptrdiff_t>(next), members.end());
      out.push_back(std::move(rest));
    }
  }
  return out;
}

}  // namespace glosa
