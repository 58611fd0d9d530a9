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

#include "glosa/follower_mpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glosa
{

std::vector<double> target_gaps(
  std::span<const double> speeds, double time_gap, double standstill_gap)
{
  std::vector<double> out;
  out.reserve(speeds.size());
  for (const double s : speeds) {
    if (s < 0.0) {
      throw std::invalid_argument("target_gaps: speeds must be non-negative");
    }
    out.push_back(s * time_gap + standstill_gap);
  }
  return out;
}

Eigen::VectorXd GapSystem::predicted_gaps(const Eigen::VectorXd & controls) const
{
  return gaps + coupling * controls;
}

double GapSystem::gap_cost(const Eigen::VectorXd & controls) const
{
  const Eigen::VectorXd e = predicted_gaps(controls) - targets;
  return e.tail(follower_count()).squaredNorm();
}

Eigen::VectorXd GapSystem::with_leader(const Eigen::VectorXd & follower_controls) const
{
  Eigen::VectorXd u(follower_controls.size() + 1);
  u << leader_control, follower_controls;
  return u;
}

namespace
{

// Follower residuals e = M u + h, with u the follower controls.
void residual_map(const GapSystem & s, Eigen::MatrixXd & M, Eigen::VectorXd & h)
{
  const Eigen::Index n = s.follower_count();
  M = s.coupling.bottomRightCorner(n, n);
  h = s.gaps.tail(n) - s.targets.tail(n) + s.coupling.bottomLeftCorner(n, 1) * s.leader_control;
}

}  // namespace

QpProblem GapSystem::hard_qp() const
{
  Eigen::MatrixXd M;
  Eigen::VectorXd h;
  residual_map(*this, M, h);
  const Eigen::Index n = follower_count();
  QpProblem p;
  p.P = 2.0 * M.transpose() * M;
  p.q = 2.0 * M.transpose() * h;
  p.lower = control_low.tail(n);
  p.upper = control_high.tail(n);
  p.A = M;
  p.c = -h;
  return p;
}

QpProblem GapSystem::softened_qp(double weight) const
{
  Eigen::MatrixXd M;
  Eigen::VectorXd h;
  residual_map(*this, M, h);
  const Eigen::Index n = follower_count();
  QpProblem p;
  p.P = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  p.P.topLeftCorner(n, n) = 2.0 * M.transpose() * M;
  p.P.bottomRightCorner(n, n) = 2.0 * weight * Eigen::MatrixXd::Identity(n, n);
  p.q = Eigen::VectorXd::Zero(2 * n);
  p.q.head(n) = 2.0 * M.transpose() * h;
  p.lower.resize(2 * n);
  p.upper.resize(2 * n);
  p.lower << control_low.tail(n), Eigen::VectorXd::Zero(n);
  p.upper << control_high.tail(n), Eigen::VectorXd::Constant(n, kInfinity);
  p.A.resize(n, 2 * n);
  p.A << M, Eigen::MatrixXd::Identity(n, n);
  p.c = -h;
  return p;
}

GapSystem build_qp(
  const Platoon & platoon, const SpeedAdvisory & leader_advisory, double dt,
  const VehicleCapabilities & caps, double speed_limit, const MpcParams & params)
{
  if (platoon.follower_count() == 0) {
    throw std::invalid_argument("build_qp: platoon has no followers");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("build_qp: dt must be positive");
  }
  const auto size = static_cast<Eigen::Index>(platoon.members.size());
  GapSystem s;
  s.dt = dt;
  s.speed_limit = speed_limit;
  s.signal_id = platoon.signal_id;
  s.speeds.resize(size);
  s.gaps.resize(size);
  s.control_low.resize(size);
  s.control_high.resize(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto & bsm = platoon.members[static_cast<std::size_t>(i)].bsm;
    s.ids.push_back(bsm.id);
    s.speeds[i] = bsm.speed;
    if (i == 0) {
      s.gaps[i] = 0.0;  // inert; any finite value will do
    } else if (std::isfinite(bsm.gap)) {
      s.gaps[i] = bsm.gap;
    } else {
      const auto & ahead = platoon.members[static_cast<std::size_t>(i - 1)].bsm;
      s.gaps[i] = std::max(0.0, ahead.x - bsm.x - params.vehicle_length);
    }
  }
  const std::vector<double> speeds(s.speeds.data(), s.speeds.data() + size);
  const auto targets = target_gaps(speeds, params.time_gap, params.standstill_gap);
  s.targets = Eigen::Map<const Eigen::VectorXd>(targets.data(), size);

  s.leader_control = 0.5 * (s.speeds[0] + leader_advisory.advised_speed);
  s.control_low[0] = s.leader_control;
  s.control_high[0] = s.leader_control;
  for (Eigen::Index i = 1; i < size; ++i) {
    const double v = s.speeds[i];
    const double hi = std::min(0.5 * (v + speed_limit), v + 0.5 * caps.max_accel * dt);
    const double lo = std::max(0.5 * v, v + 0.5 * caps.max_brake * dt);
    s.control_high[i] = hi;
    s.control_low[i] = std::min(lo, hi);
  }

  s.coupling = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index i = 1; i < size; ++i) {
    s.coupling(i, i - 1) = dt;
    s.coupling(i, i) = -dt;
  }
  return s;
}

FollowerPlan optimize_followers(const GapSystem & system, double now, const MpcParams & params)
{
  const Eigen::Index n = system.follower_count();
  if (n <= 0) {
    throw std::invalid_argument("optimize_followers: no followers");
  }
  FollowerPlan plan;
  QpSolution sol = solve_qp(system.hard_qp(), params.qp);
  plan.iterations = sol.iterations;
  if (sol.status == QpStatus::Infeasible) {
    sol = solve_qp(system.softened_qp(params.slack_weight), params.qp);
    plan.iterations += sol.iterations;
    plan.status = QpStatus::Softened;
    plan.controls = sol.u.head(n);
  } else {
    plan.status = sol.status;
    plan.controls = sol.u;
  }
  plan.objective = system.gap_cost(system.with_leader(plan.controls));

  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index member = i + 1;
    SpeedAdvisory adv;
    adv.cv_id = system.ids[static_cast<std::size_t>(member)];
    adv.advised_speed = std::clamp(
      2.0 * plan.controls[i] - system.speeds[member], 0.0, system.speed_limit);
    adv.generated_at = now;
    adv.signal_id = system.signal_id;
    adv.role = AdvisoryRole::Follower;
    plan.advisories.push_back(adv);
  }
  return plan;
}

}  // namespace glosa
