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

#include "pmest/estimators.h"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "pmest/errors.h"
#include "pmest/robhyt.h"

namespace pmest {

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ContractError("PrivacyBudget: epsilon must be positive and finite");
  }
}

namespace {

void CheckShape(const ScoreModel& model, const Dataset& data) {
  if (data.p() != model.p()) throw ContractError("dataset width does not match model p");
  if (data.y.size() != data.n()) throw ContractError("dataset x/y row counts differ");
  if (data.n() < 1) throw ContractError("dataset has no rows");
}

// (1/n) sum rho_k(s_i) + ridge/(2n) ||theta||^2 + linear^T theta / n.
Objective RobHytObjective(const ScoreModel& model, const Dataset& data, const LossSpec& spec,
                          double ridge, const Eigen::VectorXd& linear) {
  return [&model, &data, spec, ridge, linear](const Eigen::VectorXd& theta,
                                              Eigen::VectorXd* grad) {
    const double n = static_cast<double>(data.n());
    const Eigen::VectorXd u = data.x * theta;
    Eigen::VectorXd weight(u.size());
    double loss = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      double s = 0.0;
      double ds = -1.0;  // d s / d u
      if (model.family() == Family::kLinear) {
        s = data.y(i) - u(i);
      } else {
        s = data.y(i) - Logistic(u(i));
        ds = -LogisticDerivative(u(i));
      }
      if (!std::isfinite(s)) return std::numeric_limits<double>::quiet_NaN();
      loss += Rho(spec, s);
      weight(i) = Psi(spec, s) * ds;
    }
    double value = loss / n;
    if (ridge > 0.0) value += 0.5 * ridge / n * theta.squaredNorm();
    if (linear.size() > 0) value += linear.dot(theta) / n;
    if (grad != nullptr) {
      *grad = data.x.transpose() * weight / n;
      if (ridge > 0.0) *grad += ridge / n * theta;
      if (linear.size() > 0) *grad += linear / n;
    }
    return value;
  };
}

double Softplus(double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

// Mean logistic NLL plus the same optional ridge and linear terms.
Objective LogisticNllObjective(const Dataset& data, double ridge, const Eigen::VectorXd& linear) {
  return [&data, ridge, linear](const Eigen::VectorXd& theta, Eigen::VectorXd* grad) {
    const double n = static_cast<double>(data.n());
    const Eigen::VectorXd u = data.x * theta;
    Eigen::VectorXd residual(u.size());
    double loss = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      loss += Softplus(u(i)) - data.y(i) * u(i);
      residual(i) = Logistic(u(i)) - data.y(i);
    }
    double value = loss / n;
    if (ridge > 0.0) value += 0.5 * ridge / n * theta.squaredNorm();
    if (linear.size() > 0) value += linear.dot(theta) / n;
    if (grad != nullptr) {
      *grad = data.x.transpose() * residual / n;
      if (ridge > 0.0) *grad += ridge / n * theta;
      if (linear.size() > 0) *grad += linear / n;
    }
    return value;
  };
}

std::string NonConvergenceWarning(const SolveReport& r) {
  return "solver did not converge (" + std::string(SolveStatusName(r.status)) +
         ", |grad| = " + std::to_string(r.grad_norm) +
         "); privacy guarantee does not hold for this output";
}

}  // namespace

ReferenceFit FitNonprivateReference(const ScoreModel& model, const Dataset& data,
                                    const SolverOptions& solver) {
  CheckShape(model, data);
  ReferenceFit fit;
  if (model.family() == Family::kLinear) {
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.x);
    if (qr.rank() < data.p()) {
      throw SingularSystemError("least squares: X^T X is singular (rank " +
                                std::to_string(qr.rank()) + " < p = " +
                                std::to_string(data.p()) + ")");
    }
    fit.theta = qr.solve(data.y);
    return fit;
  }
  SolveReport r = Minimize(LogisticNllObjective(data, 0.0, Eigen::VectorXd()),
                           Eigen::VectorXd::Zero(data.p()), solver);
  fit.theta = r.theta_hat;
  fit.converged = r.converged;
  const Eigen::VectorXd u = data.x * fit.theta;
  bool separated = true;
  for (Eigen::Index i = 0; i < u.size() && separated; ++i) {
    separated = data.y(i) == 1.0 ? u(i) > 0.0 : u(i) < 0.0;
  }
  if (separated) {
    fit.converged = false;
    fit.warnings.push_back("data are linearly separable; the logistic MLE does not exist");
  } else if (!r.converged) {
    fit.warnings.push_back(NonConvergenceWarning(r));
  }
  fit.solve = std::move(r);
  return fit;
}

SolveReport FitRobustMEstimator(const ScoreModel& model, const Dataset& data, double k,
                                const SolverOptions& solver) {
  CheckShape(model, data);
  const LossSpec spec(k);
  return Minimize(RobHytObjective(model, data, spec, 0.0, Eigen::VectorXd()),
                  Eigen::VectorXd::Zero(data.p()), solver);
}

PrivateFitResult FitPerturbedMEstimator(const ScoreModel& model, const Dataset& data, double k,
                                        const PrivacyBudget& budget, Rng& rng,
                                        const SolverOptions& solver) {
  CheckShape(model, data);
  model.CheckDomain(data);
  const LossSpec spec(k);

  PrivateFitResult result;
  result.k = k;
  result.budget = budget;
  result.bounds = BoundsFor(model, spec);
  result.delta_k = 2.0 * result.bounds.lambda_k / budget.epsilon();
  result.noise = SampleL2Exponential(model.p(), budget.epsilon(), result.bounds.xi_k, rng);
  result.solve = Minimize(RobHytObjective(model, data, spec, result.delta_k, result.noise.b),
                          Eigen::VectorXd::Zero(data.p()), solver);
  result.theta_dp = result.solve.theta_hat;
  if (!result.solve.converged) result.warnings.push_back(NonConvergenceWarning(result.solve));
  return result;
}

Eigen::Index SuffStatsDimension(Eigen::Index p) { return p * (p + 1) / 2 + p; }

double SuffStatsSensitivity(Eigen::Index p, NormKind norm) {
  const double m = static_cast<double>(SuffStatsDimension(p));
  switch (norm) {
    case NormKind::kL1:
      return kSuffStatsCoordinateSensitivity * m;
    case NormKind::kL2:
      return kSuffStatsCoordinateSensitivity * std::sqrt(m);
    case NormKind::kLinf:
      return kSuffStatsCoordinateSensitivity;
  }
  throw ContractError("SuffStatsSensitivity: unknown norm");
}

Eigen::VectorXd SufficientStatistics(const Dataset& data) {
  const Eigen::Index p = data.p();
  const Eigen::MatrixXd xtx = data.x.transpose() * data.x;
  const Eigen::VectorXd xty = data.x.transpose() * data.y;
  Eigen::VectorXd stats(SuffStatsDimension(p));
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) stats(idx++) = xtx(i, j);
  }
  stats.tail(p) = xty;
  return stats;
}

KNormFitResult FitKNormSuffStats(const Dataset& data, const PrivacyBudget& budget, NormKind norm,
                                 Rng& rng) {
  const ScoreModel model(Family::kLinear, data.p());
  CheckShape(model, data);
  model.CheckDomain(data);
  const Eigen::Index p = data.p();

  KNormFitResult result;
  result.label = "knorm_suffstats_" + std::string(NormName(norm)) + " (baseline stand-in)";
  result.sensitivity = SuffStatsSensitivity(p, norm);
  result.noise = SampleKNorm(SuffStatsDimension(p), budget.epsilon(), result.sensitivity, norm, rng);
  const Eigen::VectorXd noisy = SufficientStatistics(data) + result.noise.b;

  Eigen::MatrixXd xtx(p, p);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) xtx(i, j) = xtx(j, i) = noisy(idx++);
  }
  const Eigen::VectorXd xty = noisy.tail(p);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(xtx);
  Eigen::VectorXd values = eig.eigenvalues();
  if (values.minCoeff() < kPdFloor) {
    values = values.cwiseMax(kPdFloor);
    result.repaired = true;
  }
  const Eigen::MatrixXd& v = eig.eigenvectors();
  result.theta = v * (v.transpose() * xty).cwiseQuotient(values);
  return result;
}

double LogisticGradientSensitivity(Eigen::Index p, NormKind norm) {
  const double dp = static_cast<double>(p);
  switch (norm) {
    case NormKind::kL1:
      return 2.0 * dp;
    case NormKind::kL2:
      return 2.0 * std::sqrt(dp);
    case NormKind::kLinf:
      return 2.0;
  }
  throw ContractError("LogisticGradientSensitivity: unknown norm");
}

double LogisticHessianBound(Eigen::Index p) { return 0.25 * static_cast<double>(p); }

ObjectivePerturbationResult FitKNormObjectiveLogistic(const Dataset& data,
                                                      const PrivacyBudget& budget, NormKind norm,
                                                      double q, Rng& rng,
                                                      const SolverOptions& solver) {
  if (!(q > 0.0 && q < 1.0)) throw ContractError("FitKNormObjectiveLogistic: q must lie in (0, 1)");
  const ScoreModel model(Family::kLogistic, data.p());
  CheckShape(model, data);
  model.CheckDomain(data);
  const Eigen::Index p = data.p();

  ObjectivePerturbationResult result;
  result.q = q;
  result.label = "opm_" + std::string(NormName(norm)) + " (baseline stand-in)";
  result.sensitivity = LogisticGradientSensitivity(p, norm);
  result.lambda = LogisticHessianBound(p);
  result.gamma = result.lambda / std::expm1((1.0 - q) * budget.epsilon());
  result.noise = SampleKNorm(p, q * budget.epsilon(), result.sensitivity, norm, rng);
  result.solve = Minimize(LogisticNllObjective(data, result.gamma, result.noise.b),
                          Eigen::VectorXd::Zero(p), solver);
  result.theta = result.solve.theta_hat;
  if (!result.solve.converged) result.warnings.push_back(NonConvergenceWarning(result.solve));
  return result;
}

}  // namespace pmest
