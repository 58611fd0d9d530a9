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

#ifndef GLOSA__PLATOONING_HPP_
#define GLOSA__PLATOONING_HPP_

#include "glosa/corridor.hpp"
#include "glosa/traffic_sim.hpp"

#include <vector>

namespace glosa
{

/// A platoon member as seen by the assigner: its BSM plus distance to the stop line.
struct PlatoonMember
{
  BsmRecord bsm;
  double distance = 0.0;
};

/// Consecutive CVs of one lane that share a passage window at one signal.
/// `members.front()` is the leader; the rest are followers, nearest first.
struct Platoon
{
  int signal_id = 0;
  int lane = 0;
  PlatoonCase platoon_case = PlatoonCase::Unassigned;
  double available_time = 0.0;  // t_avail used to admit members; 0 when unassigned
  std::vector<PlatoonMember> members;

  const PlatoonMember & leader() const { return members.front(); }
  std::size_t follower_count() const { return members.empty() ? 0 : members.size() - 1; }
};

/// Lower bound on the time to reach the stop line `distance` ahead: full
/// acceleration to `speed_limit`, then cruise. If the line comes first, the
/// accelerate-only time is returned instead.
double min_time_to_intersection(
  double speed, double distance, double speed_limit, double max_accel);

/// Greedy nearest-first split of the CVs approaching one signal.
///
/// For each lane: while green, the case-I platoon grows while the candidate can
/// reach the line within the remaining green; then a single case-II platoon
/// grows while the candidate can reach it before the next green starts. Every
/// other CV lands in one Unassigned group per lane. `bsms` must only contain
/// CVs upstream of the stop line; order does not matter.
std::vector<Platoon> identify_platoons(
  const std::vector<BsmRecord> & bsms, double stop_line, const SignalPhaseState & phase,
  const SignalTimingPlan & plan, double speed_limit, double max_accel);

}  // namespace glosa

#endif  // GLOSA__PLATOONING_HPP_
