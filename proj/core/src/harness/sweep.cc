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

#include "pmest/harness/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "pmest/errors.h"
#include "pmest/estimators.h"
#include "pmest/harness/simulate.h"
#include "pmest/preprocess.h"

namespace pmest::harness {
namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  std::vector<double> error;
  std::vector<char> converged;
};

struct Estimate {
  Eigen::VectorXd theta;
  bool converged = false;
};

struct Replication {
  Dataset data;
  Eigen::VectorXd truth;  // empty for real data
};

Dataset LoadFixedData(const ExperimentConfig& config) {
  const RawTable table = config.csv_path.empty() ? ParseCsvTable(BuiltinAttitudeCsv())
                                                 : ReadCsvTable(config.csv_path);
  return Preprocess(table, config.preprocess).data;
}

Family FamilyOf(const ExperimentConfig& config) {
  return config.dataset == DatasetKind::kSyntheticLogistic ? Family::kLogistic : Family::kLinear;
}

Estimate Fit(const EstimatorSpec& spec, const ScoreModel& model, const Dataset& data, double k,
             const PrivacyBudget& budget, Rng& rng, const SolverOptions& solver) {
  switch (spec.kind) {
    case EstimatorKind::kNonprivate: {
      ReferenceFit fit = FitNonprivateReference(model, data, solver);
      return {fit.theta, fit.converged};
    }
    case EstimatorKind::kRobust: {
      SolveReport r = FitRobustMEstimator(model, data, k, solver);
      return {r.theta_hat, r.converged};
    }
    case EstimatorKind::kPerturbed: {
      PrivateFitResult r = FitPerturbedMEstimator(model, data, k, budget, rng, solver);
      return {r.theta_dp, r.solve.converged};
    }
    case EstimatorKind::kKNormSuffStats: {
      KNormFitResult r = FitKNormSuffStats(data, budget, spec.norm, rng);
      return {r.theta, true};
    }
    case EstimatorKind::kOpmLogistic: {
      ObjectivePerturbationResult r =
          FitKNormObjectiveLogistic(data, budget, spec.norm, spec.q, rng, solver);
      return {r.theta, r.solve.converged};
    }
  }
  throw ContractError("unknown estimator kind");
}

double Aggregate(const std::vector<double>& errors, const std::vector<char>& converged,
                 bool converged_only, Aggregation aggregation) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t h = 0; h < errors.size(); ++h) {
    if (!std::isfinite(errors[h])) continue;
    if (converged_only && !converged[h]) continue;
    sum += aggregation == Aggregation::kLogOfMean ? errors[h] : std::log(errors[h]);
    ++count;
  }
  if (count == 0) return kNaN;
  const double mean = sum / count;
  return aggregation == Aggregation::kLogOfMean ? std::log(mean) : mean;
}

}  // namespace

std::uint64_t StreamId(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<MetricRecord> RunSweep(const ExperimentConfig& config, int jobs) {
  ValidateConfig(config);
  const std::size_t n_est = config.estimators.size();
  const std::size_t n_k = config.k_grid.size();
  const auto reps = static_cast<std::size_t>(config.replications);
  const PrivacyBudget budget(config.epsilon);
  const Family family = FamilyOf(config);

  std::optional<Dataset> fixed;
  if (config.dataset == DatasetKind::kAttitudeCsv) fixed = LoadFixedData(config);

  std::vector<Cell> cells(n_est * n_k);
  for (Cell& c : cells) {
    c.error.assign(reps, kNaN);
    c.converged.assign(reps, 0);
  }
  auto cell = [&](std::size_t e, std::size_t j) -> Cell& { return cells[e * n_k + j]; };

  const Rng master(config.master_seed);
  auto run_replication = [&](std::size_t h) {
    const Rng rep_rng = master.Derive(h);
    Replication rep;
    if (fixed) {
      rep.data = *fixed;
    } else {
      Rng data_rng = rep_rng.Derive(kDataStream);
      SimulatedData sim = family == Family::kLogistic
                              ? SimulateLogistic(config.logistic.n, data_rng)
                              : SimulateLinear(config.linear, data_rng);
      rep.data = std::move(sim.data);
      rep.truth = std::move(sim.beta);
    }
    const ScoreModel model(family, rep.data.p());

    Eigen::VectorXd reference;
    if (config.metric == Metric::kLogL2CoefError) {
      if (config.reference == CoefReference::kTruth) {
        reference = rep.truth;
      } else {
        reference = FitNonprivateReference(model, rep.data, config.solver).theta;
      }
    }
    auto error_of = [&](const Eigen::VectorXd& theta) {
      if (config.metric == Metric::kLogL2CoefError) return (theta - reference).norm();
      return (rep.data.x * theta - rep.data.y).squaredNorm() / static_cast<double>(rep.data.n());
    };

    for (std::size_t e = 0; e < n_est; ++e) {
      const EstimatorSpec& spec = config.estimators[e];
      const std::uint64_t stream = StreamId(spec.label);
      const std::size_t fits = spec.depends_on_k() ? n_k : 1;
      for (std::size_t j = 0; j < fits; ++j) {
        Rng rng = rep_rng.Derive(stream);
        double err = kNaN;
        bool conv = false;
        try {
          const Estimate est =
              Fit(spec, model, rep.data, config.k_grid[j], budget, rng, config.solver);
          err = error_of(est.theta);
          conv = est.converged;
        } catch (const std::exception&) {
          // Counted as a failed, non-converged replication.
        }
        const std::size_t first = spec.depends_on_k() ? j : 0;
        const std::size_t last = spec.depends_on_k() ? j + 1 : n_k;
        for (std::size_t jj = first; jj < last; ++jj) {
          cell(e, jj).error[h] = err;
          cell(e, jj).converged[h] = conv ? 1 : 0;
        }
      }
    }
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(reps)));
  if (workers == 1) {
    for (std::size_t h = 0; h < reps; ++h) run_replication(h);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t h = next++; h < reps; h = next++) {
          try {
            run_replication(h);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<MetricRecord> records;
  records.reserve(n_est * n_k);
  for (std::size_t e = 0; e < n_est; ++e) {
    for (std::size_t j = 0; j < n_k; ++j) {
      const Cell& c = cell(e, j);
      MetricRecord r;
      r.estimator = config.estimators[e].label;
      r.k = config.k_grid[j];
      r.n_total = config.replications;
      for (char v : c.converged) r.n_converged += v;
      r.metric_value = Aggregate(c.error, c.converged, false, config.aggregation);
      r.metric_value_converged = Aggregate(c.error, c.converged, true, config.aggregation);
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace pmest::harness
