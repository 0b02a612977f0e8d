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

#ifndef PMEST_SENSITIVITY_H_
#define PMEST_SENSITIVITY_H_

#include <cstdint>
#include <numbers>
#include <optional>

#include <Eigen/Core>

#include "pmest/robhyt.h"
#include "pmest/score_model.h"

namespace pmest {

// sup_u |eta''(u)| for the logistic link, attained at eta = 1/2 +- 1/(2 sqrt 3).
inline constexpr double kLogisticSecondDerivativeSup = 1.0 / (6.0 * std::numbers::sqrt3);

// Calibration constants for objective perturbation of rho_k(s(theta; d)):
//   ||grad rho_k(s(theta; d))||_2 <= xi_k
//   eigenvalues of hess rho_k(s(theta; d)) <= lambda_k
// for every theta and every d in the bounded domain (x in [-1,1]^p, linear
// y in [-1,1], logistic y in {0,1}). The intercept counts toward ||x||.
struct SensitivityBounds {
  double xi_k = 0.0;
  double lambda_k = 0.0;
};

// Closed forms, using |tanh| <= 1, sech^2 <= 1, ||x||_2 <= sqrt(p),
// eta' <= 1/4 and |eta''| <= kLogisticSecondDerivativeSup:
//   linear:   xi_k = k sqrt(p),      lambda_k = 2 p
//   logistic: xi_k = k sqrt(p) / 4,  lambda_k = p (1/8 + k sup|eta''|)
// Never computed from realized data.
SensitivityBounds BoundsFor(const ScoreModel& model, const LossSpec& spec);

// Gradient and Hessian (in theta) of rho_k(s(theta; d)) for one row:
//   psi_k(s) grad s   and   rho''_k(s) grad s grad s^T + psi_k(s) hess s.
Eigen::VectorXd LossGradient(const ScoreModel& model, const LossSpec& spec,
                             const Eigen::VectorXd& theta, const Observation& obs);
Eigen::MatrixXd LossHessian(const ScoreModel& model, const LossSpec& spec,
                            const Eigen::VectorXd& theta, const Observation& obs);

struct BoundsSample {
  Eigen::VectorXd theta;
  Observation obs;
  double grad_norm = 0.0;
  double max_eigenvalue = 0.0;
};

struct BoundsReport {
  int trials = 0;
  double max_grad_ratio = 0.0;  // max ||grad|| / xi_k over samples
  double max_eig_ratio = 0.0;   // max lambda_max / lambda_k over samples
  BoundsSample tightest_grad;
  BoundsSample tightest_eig;
  std::optional<BoundsSample> violation;  // first sample exceeding a bound

  bool ok() const { return !violation.has_value(); }
};

// Box used for theta when probing the bounds.
inline constexpr double kDefaultThetaBox = 10.0;

// Randomized soundness check of `bounds`: draws `trials` (theta, d) pairs
// with theta in [-theta_box, theta_box]^p and d in the bounded domain
// (corners are over-sampled), and records the tightest observed ratios.
// A violation means the bound derivation is wrong. Throws ContractError
// if trials < 1.
BoundsReport VerifyBoundsEmpirically(const ScoreModel& model, const LossSpec& spec,
                                     const SensitivityBounds& bounds, int trials,
                                     std::uint64_t seed, double theta_box = kDefaultThetaBox);

}  // namespace pmest

#endif  // PMEST_SENSITIVITY_H_
