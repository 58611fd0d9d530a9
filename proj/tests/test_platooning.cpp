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
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace glosa;

namespace
{

BsmRecord bsm(int id, double x, double speed, int lane = 0)
{
  BsmRecord b;
  b.id = id;
  b.lane = lane;
  b.x = x;
  b.speed = speed;
  return b;
}

}  // namespace

TEST_SUITE("platooning")
{
  TEST_CASE("minimum time at the speed limit is distance over speed")
  {
    CHECK(min_time_to_intersection(15, 150, 15, 2.5) == doctest::Approx(10.0));
  }

  TEST_CASE("minimum time with an acceleration phase")
  {
    CHECK(min_time_to_intersection(10, 200, 15, 2.5) == doctest::Approx(2.0 + 175.0 / 15.0));
  }

  TEST_CASE("minimum time when the line comes before the limit")
  {
    CHECK(min_time_to_intersection(10, 20, 15, 2.5) ==
          doctest::Approx((-10.0 + std::sqrt(200.0)) / 2.5));
  }

  TEST_CASE("both branches agree where they meet")
  {
    oracle::Gen g(21);
    for (int i = 0; i < 1000; ++i) {
      const double limit = g.uniform(5, 30);
      const double s = g.uniform(0, limit);
      const double a = g.uniform(0.5, 4);
      const double d = (limit * limit - s * s) / (2 * a);
      const double below = min_time_to_intersection(s, d * (1 - 1e-12), limit, a);
      const double above = min_time_to_intersection(s, d * (1 + 1e-12), limit, a);
      CHECK(std::abs(above - below) <= 1e-9 * std::max(1.0, d));
    }
  }

  TEST_CASE("minimum time matches 1 ms integration")
  {
    oracle::Gen g(22);
    for (int i = 0; i < 300; ++i) {
      const double limit = 15.6464;
      const double s = g.uniform(0, limit);
      const double d = g.uniform(1, 800);
      const double a = g.uniform(1, 3.5);
      CHECK(std::abs(min_time_to_intersection(s, d, limit, a) - oracle::integrate_min_time(s, d, limit, a)) <= 0.01);
    }
  }

  TEST_CASE("everyone fits the green: one case I platoon")
  {
    const SignalTimingPlan plan;
    const SignalPhaseState phase{Interval::Green, 25.0, 0};
    std::vector<BsmRecord> b{bsm(1, 450, 15), bsm(2, 420, 15), bsm(3, 400, 15)};
    const auto platoons = identify_platoons(b, 500, phase, plan, 15.6464, 2.5);
    REQUIRE(platoons.size() == 1);
    CHECK(platoons[0].platoon_case == PlatoonCase::I);
    CHECK(platoons[0].members.size() == 3);
    CHECK(platoons[0].leader().bsm.id == 1);
    CHECK(platoons[0].leader().distance == doctest::Approx(50));
  }

  TEST_CASE("red: no case I, nearest feasible CVs form case II")
  {
    const SignalTimingPlan plan;
    const SignalPhaseState phase{Interval::Red, 10.0, 0};
    std::vector<BsmRecord> b{bsm(1, 450, 15), bsm(2, 350, 15), bsm(3, 50, 15)};
    const auto platoons = identify_platoons(b, 500, phase, plan, 15.6464, 2.5);
    bool any_case1 = false;
    for (const auto & p : platoons) any_case1 |= p.platoon_case == PlatoonCase::I;
    CHECK_FALSE(any_case1);
    REQUIRE(!platoons.empty());
    // CVs 1 and 2 reach the line within 10 s; CV 3 (450 m away) does not.
    const auto & p2 = platoons[0];
    CHECK(p2.platoon_case == PlatoonCase::II);
    CHECK(p2.members.size() == 2);
    REQUIRE(platoons.size() == 2);
    CHECK(platoons[1].platoon_case == PlatoonCase::Unassigned);
    CHECK(platoons[1].members[0].bsm.id == 3);
  }

  TEST_CASE("green residue splits case I from case II")
  {
    // A needs 4 s, B needs 8 s; 5 s of green left, next green in 35 s.
    const double limit = 15.6464;
    const SignalTimingPlan plan{30, 3, 2, 25, 0};
    const SignalPhaseState phase{Interval::Green, 5.0, 0};
    std::vector<BsmRecord> b{bsm(1, 500 - 4 * limit, limit), bsm(2, 500 - 8 * limit, limit)};
    const auto platoons = identify_platoons(b, 500, phase, plan, limit, 2.5);
    REQUIRE(platoons.size() == 2);
    CHECK(platoons[0].platoon_case == PlatoonCase::I);
    CHECK(platoons[0].members.size() == 1);
    CHECK(platoons[0].members[0].bsm.id == 1);
    CHECK(platoons[1].platoon_case == PlatoonCase::II);
    CHECK(platoons[1].members[0].bsm.id == 2);
    CHECK(platoons[1].available_time == doctest::Approx(35.0));
  }

  TEST_CASE("property: partition, order and admission boundary")
  {
    oracle::Gen g(23);
    const double limit = 15.6464;
    const double a = 2.5;
    for (int trial = 0; trial < 400; ++trial) {
      SignalTimingPlan plan{g.uniform(10, 40), 3, 2, g.uniform(10, 40), 0};
      const auto phase = phase_at(plan, g.uniform(0, 200));
      std::vector<BsmRecord> b;
      const int n = g.integer(0, 30);
      for (int i = 0; i < n; ++i) {
        b.push_back(bsm(i, g.uniform(0, 499.9), g.uniform(0, limit), g.integer(0, 1)));
      }
      const auto platoons = identify_platoons(b, 500, phase, plan, limit, a);
      std::multiset<int> seen;
      for (const auto & p : platoons) {
        CHECK(!p.members.empty());
        if (p.platoon_case == PlatoonCase::I) CHECK(phase.interval == Interval::Green);
        for (std::size_t k = 0; k < p.members.size(); ++k) {
          seen.insert(p.members[k].bsm.id);
          CHECK(p.members[k].bsm.lane == p.lane);
          if (k > 0) CHECK(p.members[k].distance >= p.members[k - 1].distance);
          if (p.platoon_case != PlatoonCase::Unassigned) {
            const auto & m = p.members[k];
            CHECK(min_time_to_intersection(m.bsm.speed, m.distance, limit, a) <= p.available_time + 1e-9);
          }
        }
      }
      CHECK(seen.size() == b.size());
      for (const auto & r : b) CHECK(seen.count(r.id) == 1);
      // The first CV left out of a lane's case II platoon cannot make its window.
      for (const auto & p : platoons) {
        if (p.platoon_case != PlatoonCase::Unassigned) continue;
        for (const auto & q : platoons) {
          if (q.lane == p.lane && q.platoon_case == PlatoonCase::II) {
            const auto & m = p.members.front();
            CHECK(min_time_to_intersection(m.bsm.speed, m.distance, limit, a) > q.available_time);
          }
        }
      }
    }
  }

  TEST_CASE("lanes are platooned independently")
  {
    const SignalPhaseState phase{Interval::Green, 25.0, 0};
    std::vector<BsmRecord> b{bsm(1, 450, 15, 0), bsm(2, 440, 15, 1)};
    const auto platoons = identify_platoons(b, 500, phase, SignalTimingPlan{}, 15.6464, 2.5);
    REQUIRE(platoons.size() == 2);
    CHECK(platoons[0].lane != platoons[1].lane);
  }

  TEST_CASE("empty input gives no platoons")
  {
    CHECK(identify_platoons({}, 500, SignalPhaseState{}, SignalTimingPlan{}, 15.6464, 2.5).empty());
  }
}
