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
#include "instances.hpp"

#include <doctest.h>

using namespace glosa;

namespace
{

constexpr double kLimit = 15.6464;

PlatoonMember member(int id, double x, double speed, double gap)
{
  PlatoonMember m;
  m.bsm.id = id;
  m.bsm.x = x;
  m.bsm.speed = speed;
  m.bsm.gap = gap;
  m.distance = 500 - x;
  return m;
}

Platoon platoon_of(std::vector<PlatoonMember> members)
{
  Platoon p;
  p.platoon_case = PlatoonCase::II;
  p.members = std::move(members);
  return p;
}

SpeedAdvisory leader_adv(double speed)
{
  return SpeedAdvisory{0, speed, 0.0, 0, AdvisoryRole::Leader};
}

}  // namespace

TEST_SUITE("follower_mpc")
{
  TEST_CASE("target gaps follow the constant time gap policy")
  {
    const std::vector<double> s{0.0, 10.0, kLimit};
    const auto t = target_gaps(s, 2.0, 2.0);
    CHECK(t[0] == doctest::Approx(2.0));
    CHECK(t[1] == doctest::Approx(22.0));
    CHECK(t[2] == doctest::Approx(33.29).epsilon(1e-4));
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(target_gaps(bad, 2, 2), std::invalid_argument);
  }

  TEST_CASE("control bounds of a moving follower")
  {
    const auto p = platoon_of({member(0, 400, 15, kInfinity), member(1, 370, 10, 25)});
    const auto s = build_qp(p, leader_adv(15), 1.0, {}, 15.0);
    CHECK(s.control_low[1] == doctest::Approx(7.75));
    CHECK(s.control_high[1] == doctest::Approx(11.25));
  }

  TEST_CASE("control bounds of a stopped follower")
  {
    const auto p = platoon_of({member(0, 400, 15, kInfinity), member(1, 370, 0, 25)});
    const auto s = build_qp(p, leader_adv(15), 1.0, {}, 15.0);
    CHECK(s.control_low[1] == doctest::Approx(0.0));
    CHECK(s.control_high[1] == doctest::Approx(1.25));
  }

  TEST_CASE("identical followers get identical bounds")
  {
    const auto p = platoon_of({member(0, 400, 12, kInfinity), member(1, 380, 9, 15), member(2, 360, 9, 15)});
    const auto s = build_qp(p, leader_adv(12), 1.0, {}, kLimit);
    CHECK(s.control_low[1] == s.control_low[2]);
    CHECK(s.control_high[1] == s.control_high[2]);
  }

  TEST_CASE("structure of the gap system")
  {
    const auto p = platoon_of({member(0, 400, 12, kInfinity), member(1, 380, 9, 15), member(2, 360, 9, 15)});
    const auto s = build_qp(p, leader_adv(11), 1.0, {}, kLimit);
    CHECK(s.coupling.row(0).isZero());
    CHECK(s.coupling(1, 0) == 1.0);
    CHECK(s.coupling(1, 1) == -1.0);
    CHECK(s.coupling(2, 1) == 1.0);
    CHECK(s.leader_control == doctest::Approx(11.5));
    CHECK(s.control_low[0] == s.leader_control);
    CHECK(s.control_high[0] == s.leader_control);
    for (Eigen::Index i = 0; i < s.targets.size(); ++i) CHECK(s.targets[i] > 0);
  }

  TEST_CASE("no followers is an error")
  {
    const auto p = platoon_of({member(0, 400, 12, kInfinity)});
    CHECK_THROWS_AS(build_qp(p, leader_adv(12), 1.0, {}, kLimit), std::invalid_argument);
  }

  TEST_CASE("a follower on target holds its speed")
  {
    const auto p = platoon_of({member(0, 400, 10, kInfinity), member(1, 373, 10, 22)});
    const auto s = build_qp(p, leader_adv(10), 1.0, {}, kLimit);
    const auto plan = optimize_followers(s, 3.0);
    CHECK(plan.status == QpStatus::Optimal);
    CHECK(plan.objective == doctest::Approx(0.0).epsilon(1e-12).scale(1));
    REQUIRE(plan.advisories.size() == 1);
    CHECK(plan.advisories[0].advised_speed == doctest::Approx(10.0));
    CHECK(plan.advisories[0].role == AdvisoryRole::Follower);
    CHECK(plan.advisories[0].generated_at == 3.0);
  }

  TEST_CASE("large gap: optimum clipped to the top of the box")
  {
    // u_L = 13 (leader at 13 advised 13); follower S=10, g=30, target 22.
    const auto p = platoon_of({member(0, 400, 13, kInfinity), member(1, 365, 10, 30)});
    const auto s = build_qp(p, leader_adv(13), 1.0, {}, 15.0);
    CHECK(s.control_high[1] == doctest::Approx(11.25));
    const auto plan = optimize_followers(s, 0.0);
    CHECK(plan.status == QpStatus::Optimal);
    CHECK(plan.controls[0] == doctest::Approx(11.25));
    CHECK(plan.advisories[0].advised_speed == doctest::Approx(12.5));
    CHECK(s.predicted_gaps(s.with_leader(plan.controls))[1] - s.targets[1] == doctest::Approx(9.75));
    // Brute-force oracle at 0.001 m/s.
    const auto b = brute_force_qp(s.hard_qp(), 0.001);
    CHECK(std::abs(b.u[0] - 11.25) <= 0.001);
  }

  TEST_CASE("unavoidable closing falls back to the softened QP at full braking")
  {
    // Gap 10 m below a 22 m target and the leader braking hard.
    const auto p = platoon_of({member(0, 400, 4, kInfinity), member(1, 385, 10, 10)});
    const auto s = build_qp(p, leader_adv(0), 1.0, {}, kLimit);
    const auto plan = optimize_followers(s, 0.0);
    CHECK(plan.status == QpStatus::Softened);
    CHECK(plan.controls[0] == doctest::Approx(s.control_low[1]));
  }

  TEST_CASE("property: optimal plans keep every gap at or above target")
  {
    oracle::Gen g(61);
    const VehicleCapabilities caps;
    int optimal = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const int n = g.integer(2, 8);
      std::vector<PlatoonMember> m;
      double x = 480;
      for (int i = 0; i < n; ++i) {
        const double speed = g.uniform(0, kLimit);
        const double gap = i == 0 ? kInfinity : g.uniform(2, 60);
        if (i > 0) x -= gap + 5.0;
        m.push_back(member(i, x, speed, gap));
      }
      const auto p = platoon_of(m);
      const auto s = build_qp(p, leader_adv(g.uniform(11.176, kLimit)), 1.0, caps, kLimit);
      const auto plan = optimize_followers(s, 0.0);
      const Eigen::VectorXd full = s.with_leader(plan.controls);
      const Eigen::VectorXd next = s.predicted_gaps(full);
      // Objective recomputed from the definition.
      double cost = 0;
      for (int i = 1; i < n; ++i) {
        const double gi = s.gaps[i] + s.dt * (full[i - 1] - full[i]);
        cost += (gi - s.targets[i]) * (gi - s.targets[i]);
      }
      CHECK(plan.objective == doctest::Approx(cost).epsilon(1e-8).scale(1));
      if (plan.status == QpStatus::Optimal) {
        ++optimal;
        for (int i = 1; i < n; ++i) CHECK(next[i] >= s.targets[i] - 1e-6);
      }
      for (int i = 1; i < n; ++i) {
        const double v = s.speeds[i];
        const double adv = plan.advisories[static_cast<std::size_t>(i - 1)].advised_speed;
        CHECK(adv >= -1e-12);
        CHECK(adv <= kLimit + 1e-12);
        CHECK(adv >= v + caps.max_brake - 1e-6);
        CHECK(adv <= v + caps.max_accel + 1e-6);
      }
    }
    CHECK(optimal > 0);
  }

  TEST_CASE("the leader gap value never changes the followers' optimum")
  {
    oracle::Gen g(62);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<PlatoonMember> m{member(0, 450, g.uniform(5, kLimit), kInfinity),
                                   member(1, 420, g.uniform(0, kLimit), g.uniform(5, 40)),
                                   member(2, 380, g.uniform(0, kLimit), g.uniform(5, 40))};
      auto s = build_qp(platoon_of(m), leader_adv(12), 1.0, {}, kLimit);
      const auto a = optimize_followers(s, 0.0);
      s.gaps[0] = g.uniform(-1000, 1000);
      s.targets[0] = g.uniform(1, 1000);
      const auto b = optimize_followers(s, 0.0);
      CHECK((a.controls - b.controls).cwiseAbs().maxCoeff() == 0.0);
      CHECK(a.objective == b.objective);
    }
  }

  TEST_CASE("missing follower gaps are rebuilt from positions")
  {
    const auto p = platoon_of({member(0, 400, 10, kInfinity), member(1, 370, 10, kInfinity)});
    const auto s = build_qp(p, leader_adv(10), 1.0, {}, kLimit);
    CHECK(s.gaps[1] == doctest::Approx(25.0));
  }
}
