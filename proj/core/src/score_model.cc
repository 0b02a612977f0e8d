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

#include "pmest/score_model.h"

#include <cmath>
#include <string>

#include "pmest/errors.h"

namespace pmest {

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kLinear:
      return "linear";
    case Family::kLogistic:
      return "logistic";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  if (name == "linear") return Family::kLinear;
  if (name == "logistic") return Family::kLogistic;
  throw ContractError("unknown model family '" + std::string(name) + "'");
}

double Logistic(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double LogisticDerivative(double u) {
  const double eta = Logistic(u);
  return eta * (1.0 - eta);
}

double LogisticSecondDerivative(double u) {
  const double eta = Logistic(u);
  return eta * (1.0 - eta) * (1.0 - 2.0 * eta);
}

ScoreModel::ScoreModel(Family family, Eigen::Index p) : family_(family), p_(p) {
  if (p < 1) throw ContractError("ScoreModel: p must be >= 1");
  if (family != Family::kLinear && family != Family::kLogistic) {
    throw ContractError("ScoreModel: unsupported family");
  }
}

void ScoreModel::CheckDims(const Eigen::VectorXd& theta, const Eigen::VectorXd& x) const {
  if (theta.size() != p_ || x.size() != p_) {
    throw ContractError("ScoreModel: dimension mismatch (p = " + std::to_string(p_) +
                        ", theta = " + std::to_string(theta.size()) +
                        ", x = " + std::to_string(x.size()) + ")");
  }
}

double ScoreModel::Score(const Eigen::VectorXd& theta, const Observation& obs) const {
  CheckDims(theta, obs.x);
  const double u = obs.x.dot(theta);
  return family_ == Family::kLinear ? obs.y - u : obs.y - Logistic(u);
}

Eigen::VectorXd ScoreModel::ScoreGrad(const Eigen::VectorXd& theta,
                                      const Observation& obs) const {
  CheckDims(theta, obs.x);
  if (family_ == Family::kLinear) return -obs.x;
  return -LogisticDerivative(obs.x.dot(theta)) * obs.x;
}

Eigen::MatrixXd ScoreModel::ScoreHess(const Eigen::VectorXd& theta,
                                      const Observation& obs) const {
  CheckDims(theta, obs.x);
  if (family_ == Family::kLinear) return Eigen::MatrixXd::Zero(p_, p_);
  return -LogisticSecondDerivative(obs.x.dot(theta)) * (obs.x * obs.x.transpose());
}

Eigen::VectorXd ScoreModel::Scores(const Eigen::VectorXd& theta, const Dataset& data) const {
  if (theta.size() != p_ || data.p() != p_) {
    throw ContractError("ScoreModel::Scores: dimension mismatch");
  }
  Eigen::VectorXd s = data.x * theta;
  if (family_ == Family::kLinear) return data.y - s;
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = data.y(i) - Logistic(s(i));
  return s;
}

void ScoreModel::CheckDomain(const Dataset& data) const {
  if (data.p() != p_) {
    throw ContractError("dataset has " + std::to_string(data.p()) +
                        " columns, model expects " + std::to_string(p_));
  }
  if (data.y.size() != data.n()) throw ContractError("dataset x/y row counts differ");
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < p_; ++j) {
      const double v = data.x(i, j);
      if (!std::isfinite(v) || std::fabs(v) > 1.0) {
        throw DataDomainError(static_cast<std::size_t>(i),
                              "row " + std::to_string(i) + ": covariate " + std::to_string(j) +
                                  " = " + std::to_string(v) + " outside [-1, 1]");
      }
    }
    const double y = data.y(i);
    const bool ok = family_ == Family::kLinear ? (std::isfinite(y) && std::fabs(y) <= 1.0)
                                               : (y == 0.0 || y == 1.0);
    if (!ok) {
      throw DataDomainError(static_cast<std::size_t>(i),
                            "row " + std::to_string(i) + ": response " + std::to_string(y) +
                                (family_ == Family::kLinear ? " outside [-1, 1]"
                                                            : " not in {0, 1}"));
    }
  }
}

}  // namespace pmest
