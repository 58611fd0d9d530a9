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

#include "glosa/qp_solver.hpp"

#include "glosa/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace glosa
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Kind { Lower, Upper, Row, Phase };

/// Every constraint of a problem in the single form  a'x >= b.
struct ConstraintSet
{
  Eigen::MatrixXd C;
  Eigen::VectorXd d;
  std::vector<Kind> kind;
  std::vector<Eigen::Index> index;

  Eigen::Index size() const { return d.size(); }
};

ConstraintSet collect(const QpProblem & p, bool with_phase_column)
{
  const Eigen::Index n = p.size();
  const Eigen::Index cols = with_phase_column ? n + 1 : n;
  std::vector<Eigen::VectorXd> rows;
  ConstraintSet cs;
  std::vector<double> rhs;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(p.lower[j])) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(cols);
      a[j] = 1.0;
      rows.push_back(a);
      rhs.push_back(p.lower[j]);
      cs.kind.push_back(Kind::Lower);
      cs.index.push_back(j);
    }
    if (std::isfinite(p.upper[j])) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(cols);
      a[j] = -1.0;
      rows.push_back(a);
      rhs.push_back(-p.upper[j]);
      cs.kind.push_back(Kind::Upper);
      cs.index.push_back(j);
    }
  }
  for (Eigen::Index i = 0; i < p.row_count(); ++i) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(cols);
    a.head(n) = p.A.row(i).transpose();
    if (with_phase_column) {
      a[n] = 1.0;
    }
    rows.push_back(a);
    rhs.push_back(p.c[i]);
    cs.kind.push_back(Kind::Row);
    cs.index.push_back(i);
  }
  if (with_phase_column) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(cols);
    a[n] = 1.0;
    rows.push_back(a);
    rhs.push_back(0.0);
    cs.kind.push_back(Kind::Phase);
    cs.index.push_back(n);
  }
  cs.C.resize(static_cast<Eigen::Index>(rows.size()), cols);
  cs.d.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cs.C.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    cs.d[static_cast<Eigen::Index>(i)] = rhs[i];
  }
  return cs;
}

/// Greedy subset of `candidates` whose constraint normals are linearly independent.
std::vector<Eigen::Index> independent_subset(
  const ConstraintSet & cs, const std::vector<Eigen::Index> & candidates)
{
  std::vector<Eigen::Index> chosen;
  Eigen::MatrixXd stacked(0, cs.C.cols());
  for (const auto i : candidates) {
    Eigen::MatrixXd trial(stacked.rows() + 1, cs.C.cols());
    trial << stacked, cs.C.row(i);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial.transpose());
    qr.setThreshold(1e-10);
    if (qr.rank() == trial.rows()) {
      stacked = trial;
      chosen.push_back(i);
    }
  }
  return chosen;
}

struct EngineResult
{
  Eigen::VectorXd x;
  std::vector<Eigen::Index> working;
  Eigen::VectorXd lambda;
};

/// Primal active-set iterations from a feasible `x` with an independent working set.
EngineResult active_set(
  const Eigen::MatrixXd & P, const Eigen::VectorXd & q, const ConstraintSet & cs,
  Eigen::VectorXd x, std::vector<Eigen::Index> working, double tol, int max_iterations,
  int & iterations)
{
  const Eigen::Index n = x.size();
  const Eigen::Index m = cs.size();
  std::vector<char> in_working(static_cast<std::size_t>(m), 0);
  for (const auto w : working) {
    in_working[static_cast<std::size_t>(w)] = 1;
  }

  for (;;) {
    if (iterations >= max_iterations) {
      std::ostringstream msg;
      msg << "QP active-set iteration cap (" << max_iterations << ") exceeded; n=" << n
          << ", constraints=" << m << ", working set size=" << working.size();
      throw SolverError(msg.str());
    }
    ++iterations;

    const Eigen::VectorXd g = P * x + q;
    const double g_scale = 1.0 + g.lpNorm<Eigen::Infinity>();
    const auto k = static_cast<Eigen::Index>(working.size());

    Eigen::MatrixXd working_t(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      working_t.col(j) = cs.C.row(working[static_cast<std::size_t>(j)]).transpose();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr;
    Eigen::MatrixXd Z;
    if (k == 0) {
      Z = Eigen::MatrixXd::Identity(n, n);
    } else {
      qr.compute(working_t);
      const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
      Z = Q.rightCols(n - k);
    }

    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    bool zero_curvature = false;
    bool stationary = true;
    if (Z.cols() > 0) {
      const Eigen::VectorXd gz = Z.transpose() * g;
      if (gz.lpNorm<Eigen::Infinity>() > 1e-13 * g_scale) {
        const Eigen::MatrixXd H = Z.transpose() * P * Z;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        const Eigen::VectorXd & ev = es.eigenvalues();
        const Eigen::MatrixXd & V = es.eigenvectors();
        const double threshold = 1e-11 * std::max(1.0, ev.cwiseAbs().maxCoeff());
        const Eigen::VectorXd coeff = V.transpose() * gz;
        Eigen::VectorXd flat = Eigen::VectorXd::Zero(gz.size());
        Eigen::VectorXd curved = Eigen::VectorXd::Zero(gz.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
          if (ev[i] <= threshold) {
            flat += coeff[i] * V.col(i);
          } else {
            curved += (coeff[i] / ev[i]) * V.col(i);
          }
        }
        if (flat.lpNorm<Eigen::Infinity>() > 1e-12 * g_scale) {
          p = -(Z * flat);
          zero_curvature = true;
        } else {
          p = -(Z * curved);
        }
        stationary = p.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + x.lpNorm<Eigen::Infinity>());
      }
    }

    if (stationary) {
      if (k == 0) {
        return {x, working, Eigen::VectorXd()};
      }
      const Eigen::VectorXd lambda = qr.solve(g);
      Eigen::Index worst = 0;
      const double most_negative = lambda.minCoeff(&worst);
      if (most_negative >= -tol) {
        return {x, working, lambda};
      }
      in_working[static_cast<std::size_t>(working[static_cast<std::size_t>(worst)])] = 0;
      working.erase(working.begin() + worst);
      continue;
    }

    double alpha = zero_curvature ? kInf : 1.0;
    Eigen::Index blocking = -1;
    const double p_norm = p.norm();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (in_working[static_cast<std::size_t>(i)]) {
        continue;
      }
      const double ap = cs.C.row(i).dot(p);
      if (ap >= -1e-14 * cs.C.row(i).norm() * p_norm) {
        continue;
      }
      const double slack = cs.C.row(i).dot(x) - cs.d[i];
      const double ratio = std::max(slack, 0.0) / -ap;
      if (ratio < alpha) {
        alpha = ratio;
        blocking = i;
      }
    }
    if (!std::isfinite(alpha)) {
      throw SolverError("QP is unbounded below along a zero-curvature direction");
    }
    x += alpha * p;
    if (blocking >= 0) {
      working.push_back(blocking);
      in_working[static_cast<std::size_t>(blocking)] = 1;
      const auto j = cs.index[static_cast<std::size_t>(blocking)];
      switch (cs.kind[static_cast<std::size_t>(blocking)]) {
        case Kind::Lower:
          x[j] = cs.d[blocking];
          break;
        case Kind::Upper:
          x[j] = -cs.d[blocking];
          break;
        case Kind::Phase:
          x[j] = 0.0;
          break;
        case Kind::Row:
          break;
      }
    }
  }
}

std::vector<Eigen::Index> active_at(const ConstraintSet & cs, const Eigen::VectorXd & x, double eps)
{
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < cs.size(); ++i) {
    const double slack = cs.C.row(i).dot(x) - cs.d[i];
    if (slack <= eps * (1.0 + std::abs(cs.d[i]))) {
      active.push_back(i);
    }
  }
  return active;
}

}  // namespace

double QpProblem::objective(const Eigen::VectorXd & u) const
{
  return 0.5 * u.dot(P * u) + q.dot(u);
}

void QpProblem::validate() const
{
  const Eigen::Index n = q.size();
  if (n == 0) {
    throw std::invalid_argument("QpProblem: no variables");
  }
  if (P.rows() != n || P.cols() != n || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("QpProblem: P, q and box sizes disagree");
  }
  if (A.rows() != c.size() || (A.rows() > 0 && A.cols() != n)) {
    throw std::invalid_argument("QpProblem: A and c sizes disagree");
  }
  const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("QpProblem: P is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw std::invalid_argument("QpProblem: P is not positive semidefinite");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
      throw std::invalid_argument("QpProblem: box lower bound exceeds upper bound");
    }
  }
  if (!q.allFinite() || !P.allFinite() || !A.allFinite() || !c.allFinite()) {
    throw std::invalid_argument("QpProblem: non-finite data");
  }
}

QpProblem QpProblem::boxed(
  Eigen::MatrixXd P, Eigen::VectorXd q, Eigen::VectorXd lower, Eigen::VectorXd upper)
{
  QpProblem p;
  p.P = std::move(P);
  p.q = std::move(q);
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.A.resize(0, p.q.size());
  p.c.resize(0);
  return p;
}

std::string_view to_string(QpStatus status)
{
  switch (status) {
    case QpStatus::Optimal:
      return "optimal";
    case QpStatus::Softened:
      return "softened";
    case QpStatus::Degenerate:
      return "degenerate";
    case QpStatus::Infeasible:
      return "infeasible";
  }
  return "?";
}

QpSolution solve_qp(const QpProblem & problem, const QpOptions & options)
{
  problem.validate();
  const Eigen::Index n = problem.size();
  const ConstraintSet cs = collect(problem, false);
  const int max_iterations =
    options.max_iterations > 0 ? options.max_iterations
                               : 10 * static_cast<int>(n + cs.size());

  QpSolution sol;
  sol.multipliers_lower = Eigen::VectorXd::Zero(n);
  sol.multipliers_upper = Eigen::VectorXd::Zero(n);
  sol.multipliers_rows = Eigen::VectorXd::Zero(problem.row_count());

  // Start from the projection of the origin onto the box.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n).cwiseMax(problem.lower).cwiseMin(problem.upper);

  bool pinned = true;
  for (Eigen::Index j = 0; j < n; ++j) {
    pinned = pinned && problem.lower[j] == problem.upper[j];
  }

  double violation = 0.0;
  if (problem.row_count() > 0) {
    violation = (problem.c - problem.A * x).maxCoeff();
  }

  int iterations = 0;
  if (violation > 0.0) {
    if (pinned) {
      sol.u = x;
      sol.objective = problem.objective(x);
      sol.status = QpStatus::Infeasible;
      return sol;
    }
    // Phase 1: minimize the uniform row violation t >= 0 over the box.
    const ConstraintSet ps = collect(problem, true);
    Eigen::VectorXd z(n + 1);
    z << x, violation;
    Eigen::MatrixXd P1 = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd q1 = Eigen::VectorXd::Zero(n + 1);
    q1[n] = 1.0;
    const auto start = independent_subset(ps, active_at(ps, z, 1e-12));
    const int phase_cap = 10 * static_cast<int>(n + 1 + ps.size());
    auto phase1 = active_set(P1, q1, ps, z, start, options.tol, phase_cap, iterations);
    const double residual = phase1.x[n];
    if (residual > options.tol) {
      sol.u = phase1.x.head(n);
      sol.objective = problem.objective(sol.u);
      sol.status = QpStatus::Infeasible;
      sol.iterations = iterations;
      return sol;
    }
    x = phase1.x.head(n).cwiseMax(problem.lower).cwiseMin(problem.upper);
  }

  const auto start = independent_subset(cs, active_at(cs, x, 1e-12));
  int phase2_iterations = 0;
  auto result =
    active_set(problem.P, problem.q, cs, x, start, options.tol, max_iterations, phase2_iterations);
  iterations += phase2_iterations;

  sol.u = result.x;
  sol.objective = problem.objective(sol.u);
  sol.iterations = iterations;
  sol.status = pinned ? QpStatus::Degenerate : QpStatus::Optimal;
  for (std::size_t w = 0; w < result.working.size(); ++w) {
    const auto i = result.working[w];
    const double lambda = result.lambda[static_cast<Eigen::Index>(w)];
    const auto j = cs.index[static_cast<std::size_t>(i)];
    switch (cs.kind[static_cast<std::size_t>(i)]) {
      case Kind::Lower:
        sol.multipliers_lower[j] = lambda;
        break;
      case Kind::Upper:
        sol.multipliers_upper[j] = lambda;
        break;
      case Kind::Row:
        sol.multipliers_rows[j] = lambda;
        break;
      case Kind::Phase:
        break;
    }
  }
  sol.kkt_residual = kkt_residual(problem, sol);
  return sol;
}

double kkt_residual(const QpProblem & problem, const QpSolution & s)
{
  const Eigen::VectorXd & u = s.u;
  Eigen::VectorXd r = problem.P * u + problem.q - s.multipliers_lower + s.multipliers_upper;
  if (problem.row_count() > 0) {
    r -= problem.A.transpose() * s.multipliers_rows;
  }
  double worst = r.lpNorm<Eigen::Infinity>();
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    worst = std::max(worst, problem.lower[j] - u[j]);
    worst = std::max(worst, u[j] - problem.upper[j]);
    worst = std::max(worst, -s.multipliers_lower[j]);
    worst = std::max(worst, -s.multipliers_upper[j]);
    if (std::isfinite(problem.lower[j])) {
      worst = std::max(worst, std::abs(s.multipliers_lower[j] * (u[j] - problem.lower[j])));
    }
    if (std::isfinite(problem.upper[j])) {
      worst = std::max(worst, std::abs(s.multipliers_upper[j] * (problem.upper[j] - u[j])));
    }
  }
  for (Eigen::Index i = 0; i < problem.row_count(); ++i) {
    const double slack = problem.A.row(i).dot(u) - problem.c[i];
    worst = std::max(worst, -slack);
    worst = std::max(worst, -s.multipliers_rows[i]);
    worst = std::max(worst, std::abs(s.multipliers_rows[i] * slack));
  }
  return std::max(worst, 0.0);
}

QpSolution brute_force_qp(const QpProblem & problem, double resolution)
{
  problem.validate();
  const Eigen::Index n = problem.size();
  if (n > 3) {
    throw std::invalid_argument("brute_force_qp: at most 3 variables");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("brute_force_qp: resolution must be positive");
  }
  std::vector<std::vector<double>> axes(3, std::vector<double>{0.0});
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = problem.lower[j];
    const double hi = problem.upper[j];
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("brute_force_qp: box must be finite");
    }
    auto & axis = axes[static_cast<std::size_t>(j)];
    axis.clear();
    const auto steps = static_cast<long>(std::floor((hi - lo) / resolution + 1e-9));
    for (long k = 0; k <= steps; ++k) {
      axis.push_back(std::min(hi, lo + static_cast<double>(k) * resolution));
    }
    if (axis.back() < hi) {
      axis.push_back(hi);
    }
  }

  // Plain arrays: the loop below visits millions of points.
  const Eigen::Index rows = problem.row_count();
  double P[3][3] = {};
  double q[3] = {};
  for (Eigen::Index i = 0; i < n; ++i) {
    q[i] = problem.q[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      P[i][j] = problem.P(i, j);
    }
  }
  std::vector<double> A(static_cast<std::size_t>(rows) * 3, 0.0);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index j = 0; j < n; ++j) {
      A[static_cast<std::size_t>(r * 3 + j)] = problem.A(r, j);
    }
  }

  QpSolution best;
  best.status = QpStatus::Infeasible;
  best.objective = kInf;
  best.u = Eigen::VectorXd::Zero(n);
  double x[3];
  for (const double a : axes[0]) {
    x[0] = a;
    for (const double b : axes[1]) {
      x[1] = b;
      for (const double c : axes[2]) {
        x[2] = c;
        bool feasible = true;
        for (Eigen::Index r = 0; r < rows && feasible; ++r) {
          const double * row = &A[static_cast<std::size_t>(r * 3)];
          feasible = row[0] * x[0] + row[1] * x[1] + row[2] * x[2] >= problem.c[r] - 1e-12;
        }
        if (!feasible) {
          continue;
        }
        double f = 0.0;
        for (int i = 0; i < 3; ++i) {
          f += x[i] * (0.5 * (P[i][0] * x[0] + P[i][1] * x[1] + P[i][2] * x[2]) + q[i]);
        }
        if (f < best.objective) {
          best.objective = f;
          for (Eigen::Index j = 0; j < n; ++j) {
            best.u[j] = x[j];
          }
          best.status = QpStatus::Optimal;
        }
      }
    }
  }
  if (best.status == QpStatus::Infeasible) {
    best.objective = 0.0;
  } else {
    best.objective = problem.objective(best.u);
  }
  return best;
}

}  // namespace glosa
