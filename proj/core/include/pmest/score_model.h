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

#ifndef PMEST_SCORE_MODEL_H_
#define PMEST_SCORE_MODEL_H_

#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace pmest {

enum class Family { kLinear, kLogistic };

std::string_view FamilyName(Family family);
// Accepts "linear" or "logistic"; throws ContractError otherwise.
Family ParseFamily(std::string_view name);

// One data row d = (x, y). x carries the intercept as its first coordinate.
struct Observation {
  Eigen::VectorXd x;
  double y = 0.0;
};

// n rows stored column-major as a design matrix plus response vector.
struct Dataset {
  Eigen::MatrixXd x;  // n x p
  Eigen::VectorXd y;  // n

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
  Observation Row(Eigen::Index i) const { return {x.row(i).transpose(), y(i)}; }
};

// Logistic link eta(u) = e^u / (1 + e^u) and its first two derivatives,
// evaluated without overflow for any finite u.
double Logistic(double u);
double LogisticDerivative(double u);        // eta (1 - eta), at most 1/4
double LogisticSecondDerivative(double u);  // eta' (1 - 2 eta), |.| <= 1/(6 sqrt 3)

// Non-scaled regression score s(theta; d):
//   linear:   y - x^T theta
//   logistic: y - eta(x^T theta)
// All member functions throw ContractError when dim(theta) or dim(x) != p.
class ScoreModel {
 public:
  ScoreModel(Family family, Eigen::Index p);

  Family family() const { return family_; }
  Eigen::Index p() const { return p_; }

  double Score(const Eigen::VectorXd& theta, const Observation& obs) const;
  Eigen::VectorXd ScoreGrad(const Eigen::VectorXd& theta, const Observation& obs) const;
  Eigen::MatrixXd ScoreHess(const Eigen::VectorXd& theta, const Observation& obs) const;

  // Scores for every row of `data` at once.
  Eigen::VectorXd Scores(const Eigen::VectorXd& theta, const Dataset& data) const;

  // Throws DataDomainError naming the first row outside the bounded domain:
  // every |x_j| <= 1; linear |y| <= 1; logistic y in {0, 1}. Also throws
  // ContractError when data.p() != p().
  void CheckDomain(const Dataset& data) const;

 private:
  void CheckDims(const Eigen::VectorXd& theta, const Eigen::VectorXd& x) const;

  Family family_;
  Eigen::Index p_;
};

}  // namespace pmest

#endif  // PMEST_SCORE_MODEL_H_
