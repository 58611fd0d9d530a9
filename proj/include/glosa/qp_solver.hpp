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

#ifndef GLOSA__QP_SOLVER_HPP_
#define GLOSA__QP_SOLVER_HPP_

#include <Eigen/Dense>

#include <string_view>

namespace glosa
{

/// minimize 0.5 u'Pu + q'u  subject to  lower <= u <= upper,  A u >= c.
///
/// Bounds may be infinite. P must be symmetric positive semidefinite.
struct QpProblem
{
  Eigen::MatrixXd P;
  Eigen::VectorXd q;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::MatrixXd A;  // rows x n, may have zero rows
  Eigen::VectorXd c;

  Eigen::Index size() const { return q.size(); }
  Eigen::Index row_count() const { return A.rows(); }
  double objective(const Eigen::VectorXd & u) const;
  /// Throws std::invalid_argument on shape mismatch, asymmetry, indefiniteness or lower > upper.
  void validate() const;

  /// Problem with no inequality rows and the given box.
  static QpProblem boxed(Eigen::MatrixXd P, Eigen::VectorXd q, Eigen::VectorXd lower,
                         Eigen::VectorXd upper);
};

enum class QpStatus { Optimal, Softened, Degenerate, Infeasible };

std::string_view to_string(QpStatus status);

struct QpSolution
{
  Eigen::VectorXd u;
  double objective = 0.0;
  QpStatus status = QpStatus::Infeasible;
  int iterations = 0;
  // Multipliers are >= 0 for the optimal point; zero for inactive constraints.
  Eigen::VectorXd multipliers_lower;
  Eigen::VectorXd multipliers_upper;
  Eigen::VectorXd multipliers_rows;
  double kkt_residual = 0.0;
};

struct QpOptions
{
  double tol = 1e-8;
  /// 0 selects 10 * (variables + constraints).
  int max_iterations = 0;
};

/// Primal active-set method with a phase-1 feasibility search.
///
/// Returns status Optimal (or Degenerate when every variable is pinned by its
/// box) with the point, multipliers and KKT residual, or status Infeasible when
/// the constraints admit no point. Throws SolverError if the iteration cap is
/// exceeded or the problem is unbounded below.
QpSolution solve_qp(const QpProblem & problem, const QpOptions & options = {});

/// Exhaustive grid search over the box (both endpoints always included),
/// rejecting points that violate an inequality row. At most 3 variables.
QpSolution brute_force_qp(const QpProblem & problem, double resolution);

/// max of stationarity, primal infeasibility, negative multipliers and
/// complementarity violations for `solution`.
double kkt_residual(const QpProblem & problem, const QpSolution & solution);

}  // namespace glosa

#endif  // GLOSA__QP_SOLVER_HPP_
