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

#ifndef GLOSA__FOLLOWER_MPC_HPP_
#define GLOSA__FOLLOWER_MPC_HPP_

#include "glosa/advisory.hpp"
#include "glosa/platooning.hpp"
#include "glosa/qp_solver.hpp"
#include "glosa/traffic_sim.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace glosa
{

/// Constant-time-gap policy and solver settings for the follower MPC.
struct MpcParams
{
  double time_gap = 2.0;        // T_g
  double standstill_gap = 2.0;  // g_stand
  double slack_weight = 1e6;    // penalty on violated safety rows when the hard QP is infeasible
  double vehicle_length = 5.0;  // used when a follower's BSM carries no gap
  QpOptions qp;
};

/// Target gap per member: speed * time_gap + standstill_gap.
std::vector<double> target_gaps(std::span<const double> speeds, double time_gap, double standstill_gap);

/// Single-step gap dynamics of one platoon, leader entry first.
///
/// Controls are average speeds over the step, u = (S + S_adv) / 2. The leader's
/// control is fixed by its own advisory; its gap row is inert (zero coupling) and
/// takes no part in the objective.
struct GapSystem
{
  std::vector<int> ids;
  Eigen::VectorXd speeds;
  Eigen::VectorXd gaps;
  Eigen::VectorXd targets;
  Eigen::VectorXd control_low;
  Eigen::VectorXd control_high;
  /// Row i: g_i(k+1) = g_i(k) + dt * (u_{i-1} - u_i); row 0 is all zeros.
  Eigen::MatrixXd coupling;
  double dt = 1.0;
  double leader_control = 0.0;
  double speed_limit = 0.0;
  int signal_id = 0;

  Eigen::Index follower_count() const { return static_cast<Eigen::Index>(ids.size()) - 1; }

  /// G + B U for the full control vector (leader first).
  Eigen::VectorXd predicted_gaps(const Eigen::VectorXd & controls) const;
  /// Sum of squared follower deviations from target after one step.
  double gap_cost(const Eigen::VectorXd & controls) const;
  /// Full control vector from the follower controls.
  Eigen::VectorXd with_leader(const Eigen::VectorXd & follower_controls) const;

  /// Hard QP over follower controls: box rows plus predicted gap >= target.
  QpProblem hard_qp() const;
  /// Same QP with one non-negative slack per safety row, penalized by `weight`.
  QpProblem softened_qp(double weight) const;
};

/// Gap system for the followers of `platoon`; throws std::invalid_argument without followers.
GapSystem build_qp(
  const Platoon & platoon, const SpeedAdvisory & leader_advisory, double dt,
  const VehicleCapabilities & caps, double speed_limit, const MpcParams & params = {});

struct FollowerPlan
{
  std::vector<SpeedAdvisory> advisories;  // one per follower, platoon order
  Eigen::VectorXd controls;               // follower controls u*
  double objective = 0.0;                 // gap_cost at u*
  QpStatus status = QpStatus::Optimal;
  int iterations = 0;
};

/// Solves the follower MPC, falling back to the softened QP when the safety
/// rows cannot all hold. Advised speeds are 2u - S clamped to [0, S_max].
FollowerPlan optimize_followers(const GapSystem & system, double now, const MpcParams & params = {});

}  // namespace glosa

#endif  // GLOSA__FOLLOWER_MPC_HPP_
