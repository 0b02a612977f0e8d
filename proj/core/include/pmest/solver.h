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

#ifndef PMEST_SOLVER_H_
#define PMEST_SOLVER_H_

#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace pmest {

// Returns f(theta) and, when `grad` is non-null, writes grad f(theta).
using Objective = std::function<double(const Eigen::VectorXd& theta, Eigen::VectorXd* grad)>;

struct SolverOptions {
  double tol = 1e-8;      // on ||grad f||_2
  int max_iter = 10000;
  double armijo = 1e-4;   // sufficient decrease constant
  int max_backtracks = 60;
  bool record_trace = false;
};

// kStalled: neither f nor the gradient norm improved for 50 consecutive
// iterations, which happens when f is flat to rounding but ||grad f|| is
// still above tol.
enum class SolveStatus { kConverged, kMaxIterations, kLineSearchFailed, kNonFinite, kStalled };

std::string_view SolveStatusName(SolveStatus status);

struct SolveReport {
  Eigen::VectorXd theta_hat;
  bool converged = false;  // implies grad_norm <= tol
  double grad_norm = 0.0;
  int iterations = 0;
  double objective_value = 0.0;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::vector<double> objective_trace;  // only with record_trace
};

// Gradient descent with a Barzilai-Borwein trial step and Armijo
// backtracking. The objective sequence is nonincreasing. Makes no
// convexity assumption. Failures (non-finite values, exhausted line search,
// stalling, iteration limit) are reported in the result, never thrown.
// Throws ContractError if tol <= 0 or max_iter < 0.
SolveReport Minimize(const Objective& objective, const Eigen::VectorXd& theta0,
                     const SolverOptions& options = {});

}  // namespace pmest

#endif  // PMEST_SOLVER_H_
