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

#include "pmest/sensitivity.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "pmest/errors.h"
#include "pmest/rng.h"

namespace pmest {

SensitivityBounds BoundsFor(const ScoreModel& model, const LossSpec& spec) {
  const double p = static_cast<double>(model.p());
  const double k = spec.k();
  switch (model.family()) {
    case Family::kLinear:
      return {k * std::sqrt(p), 2.0 * p};
    case Family::kLogistic:
      return {0.25 * k * std::sqrt(p), p * (0.125 + k * kLogisticSecondDerivativeSup)};
  }
  throw ContractError("BoundsFor: unsupported family");
}

Eigen::VectorXd LossGradient(const ScoreModel& model, const LossSpec& spec,
                             const Eigen::VectorXd& theta, const Observation& obs) {
  return Psi(spec, model.Score(theta, obs)) * model.ScoreGrad(theta, obs);
}

Eigen::MatrixXd LossHessian(const ScoreModel& model, const LossSpec& spec,
                            const Eigen::VectorXd& theta, const Observation& obs) {
  const double s = model.Score(theta, obs);
  const Eigen::VectorXd g = model.ScoreGrad(theta, obs);
  Eigen::MatrixXd h = RhoSecond(spec, s) * (g * g.transpose());
  if (model.family() != Family::kLinear) h += Psi(spec, s) * model.ScoreHess(theta, obs);
  return h;
}

namespace {

Observation DrawObservation(const ScoreModel& model, Rng& rng) {
  Observation obs;
  obs.x.resize(model.p());
  obs.x(0) = 1.0;
  for (Eigen::Index j = 1; j < model.p(); ++j) {
    obs.x(j) = rng.Bernoulli(0.5) ? rng.Uniform(-1.0, 1.0) : (rng.Bernoulli(0.5) ? 1.0 : -1.0);
  }
  if (model.family() == Family::kLogistic) {
    obs.y = rng.Bernoulli(0.5) ? 1.0 : 0.0;
  } else {
    obs.y = rng.Bernoulli(0.5) ? rng.Uniform(-1.0, 1.0) : (rng.Bernoulli(0.5) ? 1.0 : -1.0);
  }
  return obs;
}

}  // namespace

BoundsReport VerifyBoundsEmpirically(const ScoreModel& model, const LossSpec& spec,
                                     const SensitivityBounds& bounds, int trials,
                                     std::uint64_t seed, double theta_box) {
  if (trials < 1) throw ContractError("VerifyBoundsEmpirically: trials must be >= 1");
  Rng rng(seed);
  BoundsReport report;
  report.trials = trials;
  // Half the draws come from a small box around 0, where the logistic link
  // is steepest and the scores are smallest.
  const double small_box = std::min(theta_box, 0.5);
  for (int t = 0; t < trials; ++t) {
    const double box = rng.Bernoulli(0.5) ? theta_box : small_box;
    Eigen::VectorXd theta(model.p());
    for (Eigen::Index j = 0; j < model.p(); ++j) theta(j) = rng.Uniform(-box, box);
    Observation obs = DrawObservation(model, rng);

    const double grad_norm = LossGradient(model, spec, theta, obs).norm();
    const Eigen::MatrixXd h = LossHessian(model, spec, theta, obs);
    const double max_eig =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly)
            .eigenvalues()
            .maxCoeff();

    BoundsSample sample{theta, obs, grad_norm, max_eig};
    const double grad_ratio = grad_norm / bounds.xi_k;
    const double eig_ratio = max_eig / bounds.lambda_k;
    if (grad_ratio > report.max_grad_ratio || t == 0) {
      report.max_grad_ratio = grad_ratio;
      report.tightest_grad = sample;
    }
    if (eig_ratio > report.max_eig_ratio || t == 0) {
      report.max_eig_ratio = eig_ratio;
      report.tightest_eig = sample;
    }
    if (!report.violation && (grad_ratio > 1.0 || eig_ratio > 1.0)) report.violation = sample;
  }
  return report;
}

}  // namespace pmest
