// Copyright 2026 The pmest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pmest/solver.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "pmest/errors.h"

namespace pmest {

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxIterations:
      return "max_iterations";
    case SolveStatus::kLineSearchFailed:
      return "line_search_failed";
    case SolveStatus::kNonFinite:
      return "non_finite";
    case SolveStatus::kStalled:
      return "stalled";
  }
  return "unknown";
}

namespace {

bool AllFinite(const Eigen::VectorXd& v) { return v.allFinite(); }

constexpr double kMaxStep = 1e12;
// Iterations without a strict decrease in f or a new best gradient norm
// before giving up; f has hit its rounding floor by then.
constexpr int kStallLimit = 50;
constexpr double kMinStep = 1e-20;

}  // namespace

SolveReport Minimize(const Objective& objective, const Eigen::VectorXd& theta0,
                     const SolverOptions& options) {
  if (!(options.tol > 0.0)) throw ContractError("Minimize: tol must be positive");
  if (options.max_iter < 0) throw ContractError("Minimize: max_iter must be >= 0");

  SolveReport report;
  Eigen::VectorXd theta = theta0;
  Eigen::VectorXd grad(theta.size());
  double f = objective(theta, &grad);
  report.theta_hat = theta;
  report.objective_value = f;
  if (!std::isfinite(f) || !AllFinite(grad)) {
    report.status = SolveStatus::kNonFinite;
    report.grad_norm = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  if (options.record_trace) report.objective_trace.push_back(f);

  Eigen::VectorXd candidate(theta.size());
  Eigen::VectorXd cand_grad(theta.size());
  Eigen::VectorXd fallback(theta.size());
  Eigen::VectorXd fallback_grad(theta.size());
  double bb_step = 0.0;
  double grad_norm = grad.norm();
  double best_grad_norm = grad_norm;
  int stalled = 0;

  int iter = 0;
  for (;; ++iter) {
    if (grad_norm <= options.tol) {
      report.status = SolveStatus::kConverged;
      break;
    }
    if (iter >= options.max_iter) {
      report.status = SolveStatus::kMaxIterations;
      break;
    }
    if (stalled >= kStallLimit) {
      report.status = SolveStatus::kStalled;
      break;
    }

    double step = bb_step > 0.0 ? bb_step : 1.0 / std::max(1.0, grad_norm);
    step = std::min(step, kMaxStep);
    const double g2 = grad_norm * grad_norm;

    bool accepted = false;
    bool have_fallback = false;
    double fallback_f = 0.0;
    double cand_f = 0.0;
    for (int b = 0; b <= options.max_backtracks && step >= kMinStep; ++b, step *= 0.5) {
      candidate = theta - step * grad;
      cand_f = objective(candidate, &cand_grad);
      if (!std::isfinite(cand_f) || !AllFinite(cand_grad)) continue;
      if (cand_f <= f - options.armijo * step * g2) {
        accepted = true;
        break;
      }
      // Near the optimum the decrease can fall below rounding; a step that
      // does not raise f and shrinks the gradient is still progress.
      if (!have_fallback && cand_f <= f && cand_grad.norm() < grad_norm) {
        have_fallback = true;
        fallback = candidate;
        fallback_grad = cand_grad;
        fallback_f = cand_f;
      }
    }
    if (!accepted) {
      if (!have_fallback) {
        report.status = SolveStatus::kLineSearchFailed;
        break;
      }
      candidate = fallback;
      cand_grad = fallback_grad;
      cand_f = fallback_f;
    }

    const Eigen::VectorXd s = candidate - theta;
    const Eigen::VectorXd y = cand_grad - grad;
    const double sy = s.dot(y);
    bb_step = sy > 0.0 ? s.squaredNorm() / sy : 0.0;

    assert(cand_f <= f);
    const bool decreased = cand_f < f;
    theta = candidate;
    grad = cand_grad;
    f = cand_f;
    grad_norm = grad.norm();
    if (decreased || grad_norm < best_grad_norm) {
      stalled = 0;
    } else {
      ++stalled;
    }
    best_grad_norm = std::min(best_grad_norm, grad_norm);
    if (options.record_trace) report.objective_trace.push_back(f);
  }

  report.theta_hat = theta;
  report.objective_value = f;
  report.grad_norm = grad_norm;
  report.iterations = iter;
  report.converged = report.status == SolveStatus::kConverged;
  return report;
}

}  // namespace pmest
