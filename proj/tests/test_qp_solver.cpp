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

#include "glosa/error.hpp"
#include "glosa/qp_solver.hpp"
#include "instances.hpp"

#include <doctest.h>

using namespace glosa;

namespace
{

QpProblem one_d(double target, double lo, double hi)
{
  // (u - target)^2 = 0.5 * 2 u^2 - 2 target u + const
  return QpProblem::boxed(Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Constant(1, -2.0 * target),
                          Eigen::VectorXd::Constant(1, lo), Eigen::VectorXd::Constant(1, hi));
}

}  // namespace

TEST_SUITE("qp_solver")
{
  TEST_CASE("interior minimum of an identity objective")
  {
    for (int n : {1, 3, 10}) {
      const auto p = QpProblem::boxed(Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n),
                                      Eigen::VectorXd::Constant(n, -1), Eigen::VectorXd::Constant(n, 1));
      const auto s = solve_qp(p);
      CHECK(s.status == QpStatus::Optimal);
      CHECK(s.u.norm() <= 1e-12);
    }
  }

  TEST_CASE("one-dimensional projection onto the box")
  {
    const auto s = solve_qp(one_d(21, 8, 11.25));
    CHECK(s.u[0] == doctest::Approx(11.25));
    const auto b = brute_force_qp(one_d(21, 8, 11.25), 0.001);
    CHECK(b.u[0] == doctest::Approx(11.25));
  }

  TEST_CASE("brute force matches the analytic projection")
  {
    oracle::Gen g(51);
    for (int i = 0; i < 50; ++i) {
      const double lo = g.uniform(-5, 5);
      const double hi = lo + g.uniform(0.1, 5);
      const double t = g.uniform(-8, 8);
      const auto b = brute_force_qp(one_d(t, lo, hi), 0.001);
      CHECK(std::abs(b.u[0] - std::clamp(t, lo, hi)) <= 0.001);
    }
  }

  TEST_CASE("brute force reports an empty feasible grid")
  {
    QpProblem p = one_d(0, 0, 1);
    p.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
    p.c = Eigen::VectorXd::Constant(1, 2.0);
    CHECK(brute_force_qp(p, 0.01).status == QpStatus::Infeasible);
    CHECK(solve_qp(p).status == QpStatus::Infeasible);
  }

  TEST_CASE("brute force refuses more than three variables")
  {
    const auto p = QpProblem::boxed(Eigen::MatrixXd::Identity(4, 4), Eigen::VectorXd::Zero(4),
                                    Eigen::VectorXd::Zero(4), Eigen::VectorXd::Ones(4));
    CHECK_THROWS_AS(brute_force_qp(p, 0.1), std::invalid_argument);
  }

  TEST_CASE("symmetric problem has a symmetric solution")
  {
    Eigen::MatrixXd P(2, 2);
    P << 2, 1, 1, 2;
    const auto p = QpProblem::boxed(P, Eigen::VectorXd::Constant(2, -3), Eigen::VectorXd::Zero(2),
                                    Eigen::VectorXd::Constant(2, 0.8));
    const auto s = solve_qp(p);
    CHECK(s.u[0] == doctest::Approx(s.u[1]));
    const auto b = brute_force_qp(p, 0.001);
    CHECK(std::abs(b.u[0] - b.u[1]) <= 0.001);
  }

  TEST_CASE("oracle equivalence on random instances")
  {
    oracle::Gen g(52);
    for (int i = 0; i < 60; ++i) {
      const int n = 1 + i % 3;
      const double width = n == 3 ? 0.2 : (n == 2 ? 1.0 : 4.0);
      const auto p = (i % 2 == 0) ? oracle::random_qp(g, n, width) : oracle::gap_shaped_qp(g, n, width);
      const auto s = solve_qp(p);
      const double res = n == 3 ? 0.004 : (n == 2 ? 0.001 : 1e-4);
      const auto b = brute_force_qp(p, res);
      REQUIRE(b.status == QpStatus::Optimal);
      REQUIRE(s.status != QpStatus::Infeasible);
      // The grid point can only be worse, by at most a grid-sized step.
      CHECK(b.objective - s.objective <= 5e-3);
      CHECK(s.objective <= b.objective + 1e-9);
      CHECK(oracle::kkt_violation(p, s) <= 1e-8);
      CHECK(s.kkt_residual <= 1e-8);
    }
  }

  TEST_CASE("multipliers vanish on inactive constraints")
  {
    oracle::Gen g(53);
    for (int i = 0; i < 200; ++i) {
      const auto p = oracle::random_qp(g, 1 + i % 6, 1.0);
      const auto s = solve_qp(p);
      if (s.status == QpStatus::Infeasible) continue;
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        if (s.u[j] - p.lower[j] > 1e-6) CHECK(std::abs(s.multipliers_lower[j]) <= 1e-8);
        if (p.upper[j] - s.u[j] > 1e-6) CHECK(std::abs(s.multipliers_upper[j]) <= 1e-8);
        CHECK(s.multipliers_lower[j] >= -1e-8);
        CHECK(s.multipliers_upper[j] >= -1e-8);
      }
    }
  }

  TEST_CASE("scaling the objective keeps the minimizer")
  {
    oracle::Gen g(54);
    for (int i = 0; i < 200; ++i) {
      auto p = oracle::random_qp(g, 1 + i % 5, 1.5);
      const auto a = solve_qp(p);
      if (a.status == QpStatus::Infeasible) continue;
      const double k = g.uniform(0.1, 50);
      p.P *= k;
      p.q *= k;
      const auto b = solve_qp(p);
      CHECK((a.u - b.u).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }

  TEST_CASE("larger gap-shaped instances stay certified")
  {
    oracle::Gen g(55);
    for (int i = 0; i < 100; ++i) {
      const int n = g.integer(4, 50);
      const auto p = oracle::gap_shaped_qp(g, n, 3.5);
      const auto s = solve_qp(p);
      REQUIRE(s.status != QpStatus::Infeasible);
      CHECK(oracle::kkt_violation(p, s) <= 1e-8);
    }
  }

  TEST_CASE("unbounded problems are reported")
  {
    const auto inf = std::numeric_limits<double>::infinity();
    const auto p = QpProblem::boxed(Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, -1.0),
                                    Eigen::VectorXd::Constant(1, -inf), Eigen::VectorXd::Constant(1, inf));
    CHECK_THROWS_AS(solve_qp(p), SolverError);
  }

  TEST_CASE("validation rejects malformed problems")
  {
    auto p = one_d(0, 1, 0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    Eigen::MatrixXd bad(2, 2);
    bad << 1, 2, 0, 1;
    const auto q = QpProblem::boxed(bad, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2));
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    Eigen::MatrixXd neg(1, 1);
    neg << -1;
    const auto r = QpProblem::boxed(neg, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  }

  TEST_CASE("solves are deterministic")
  {
    oracle::Gen g(56);
    const auto p = oracle::gap_shaped_qp(g, 20, 3.0);
    const auto a = solve_qp(p);
    const auto b = solve_qp(p);
    CHECK(a.u == b.u);
    CHECK(a.iterations == b.iterations);
  }
}
