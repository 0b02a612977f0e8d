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

#ifndef PMEST_ESTIMATORS_H_
#define PMEST_ESTIMATORS_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pmest/noise.h"
#include "pmest/rng.h"
#include "pmest/score_model.h"
#include "pmest/sensitivity.h"
#include "pmest/solver.h"

namespace pmest {

// Pure epsilon-DP budget (delta is always 0).
class PrivacyBudget {
 public:
  // Throws ContractError unless epsilon > 0 and finite.
  explicit PrivacyBudget(double epsilon);

  double epsilon() const { return epsilon_; }
  double delta() const { return 0.0; }

 private:
  double epsilon_;
};

// Output of the perturbed M-estimator. delta_k == 2 bounds.lambda_k / epsilon.
struct PrivateFitResult {
  Eigen::VectorXd theta_dp;
  SolveReport solve;
  SensitivityBounds bounds;
  double delta_k = 0.0;
  NoiseDraw noise;
  PrivacyBudget budget{1.0};
  double k = 0.0;
  std::vector<std::string> warnings;

  // The privacy guarantee only holds at an exact minimizer.
  bool privacy_guaranteed() const { return solve.converged; }
};

struct ReferenceFit {
  Eigen::VectorXd theta;
  bool converged = true;
  std::optional<SolveReport> solve;  // set for the iterative (logistic) fit
  std::vector<std::string> warnings;
};

// Least squares (linear) or maximum likelihood (logistic). Throws
// SingularSystemError when X^T X is singular (linear). A logistic fit whose
// final theta classifies every row strictly correctly has found a
// separating hyperplane; the MLE then does not exist and the fit is marked
// non-converged even if the gradient underflowed below tol.
ReferenceFit FitNonprivateReference(const ScoreModel& model, const Dataset& data,
                                    const SolverOptions& solver = {});

// argmin_theta (1/n) sum_i rho_k(s(theta; d_i)), started at 0.
SolveReport FitRobustMEstimator(const ScoreModel& model, const Dataset& data, double k,
                                const SolverOptions& solver = {});

// Objective perturbation of the RobHyt M-estimator:
//   Delta_k = 2 lambda_k / epsilon,
//   b_k ~ exp(-(epsilon / (2 xi_k)) ||b||_2),
//   theta_dp = argmin (1/n) sum rho_k(s_i) + Delta_k/(2n) ||theta||^2 + b_k^T theta / n.
// Throws DataDomainError (with the row index) if the data leave the
// bounded domain. Non-convergence is reported with a warning, not thrown.
PrivateFitResult FitPerturbedMEstimator(const ScoreModel& model, const Dataset& data, double k,
                                        const PrivacyBudget& budget, Rng& rng,
                                        const SolverOptions& solver = {});

// --- K-norm baselines ("baseline stand-ins") -------------------------------

// Length of the stacked statistic [upper(X^T X); X^T y] for p columns.
Eigen::Index SuffStatsDimension(Eigen::Index p);
// Bound on |change| of any single coordinate when one row is replaced.
inline constexpr double kSuffStatsCoordinateSensitivity = 2.0;
// Replace-one sensitivity of the stacked statistic in `norm`.
double SuffStatsSensitivity(Eigen::Index p, NormKind norm);
// Stacked statistic: upper triangle of X^T X row by row, then X^T y.
Eigen::VectorXd SufficientStatistics(const Dataset& data);

struct KNormFitResult {
  Eigen::VectorXd theta;
  NoiseDraw noise;
  double sensitivity = 0.0;
  bool repaired = false;  // perturbed X^T X was floored to positive definite
  std::string label;
};

// Sufficient-statistics perturbation for linear regression: adds K-norm
// noise to the stacked statistic and solves the perturbed normal equations.
// Eigenvalues of the perturbed X^T X are floored at kPdFloor when it is not
// positive definite.
inline constexpr double kPdFloor = 1e-6;
KNormFitResult FitKNormSuffStats(const Dataset& data, const PrivacyBudget& budget, NormKind norm,
                                 Rng& rng);

// Replace-one sensitivity of the logistic negative log-likelihood gradient
// (y - eta) x in `norm`: 2 sup ||x||_K.
double LogisticGradientSensitivity(Eigen::Index p, NormKind norm);
// Eigenvalue bound of the per-row NLL Hessian eta' x x^T: p / 4.
double LogisticHessianBound(Eigen::Index p);

struct ObjectivePerturbationResult {
  Eigen::VectorXd theta;
  SolveReport solve;
  NoiseDraw noise;
  double q = 0.5;
  double sensitivity = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;  // ridge coefficient
  std::string label;
  std::vector<std::string> warnings;

  bool privacy_guaranteed() const { return solve.converged; }
};

// Objective perturbation of the logistic NLL with K-norm noise. The budget
// is split by q: the noise uses q epsilon, and the ridge coefficient is
// gamma = lambda / (exp((1 - q) epsilon) - 1). Throws ContractError unless
// 0 < q < 1, DataDomainError on out-of-domain rows.
ObjectivePerturbationResult FitKNormObjectiveLogistic(const Dataset& data,
                                                      const PrivacyBudget& budget, NormKind norm,
                                                      double q, Rng& rng,
                                                      const SolverOptions& solver = {});

}  // namespace pmest

#endif  // PMEST_ESTIMATORS_H_
