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

#include "pmest/harness/consistency.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmest/errors.h"
#include "pmest/estimators.h"
#include "pmest/harness/simulate.h"
#include "pmest/rng.h"

namespace pmest::harness {

std::string_view KScheduleName(KSchedule schedule) {
  switch (schedule) {
    case KSchedule::kLogLogN:
      return "loglog_n";
    case KSchedule::kInvLogN:
      return "inv_log_n";
    case KSchedule::kFixed:
      return "fixed";
  }
  return "unknown";
}

KSchedule ParseKSchedule(std::string_view name) {
  if (name == "loglog_n") return KSchedule::kLogLogN;
  if (name == "inv_log_n") return KSchedule::kInvLogN;
  if (name == "fixed") return KSchedule::kFixed;
  throw ContractError("unknown k schedule '" + std::string(name) + "'");
}

double ScheduleK(KSchedule schedule, int n, double fixed_k) {
  switch (schedule) {
    case KSchedule::kLogLogN:
      if (n < 3) throw ContractError("loglog_n schedule needs n >= 3");
      return std::log(std::log(static_cast<double>(n)));
    case KSchedule::kInvLogN:
      if (n < 2) throw ContractError("inv_log_n schedule needs n >= 2");
      return 1.0 / std::log(static_cast<double>(n));
    case KSchedule::kFixed:
      if (!(fixed_k > 0.0)) throw ContractError("fixed schedule needs k > 0");
      return fixed_k;
  }
  throw ContractError("unknown k schedule");
}

namespace {

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ConsistencyTable ConsistencyStudy(const ConsistencyConfig& config) {
  if (config.n_grid.empty()) throw ContractError("ConsistencyStudy: n_grid is empty");
  for (std::size_t i = 1; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] <= config.n_grid[i - 1]) {
      throw ContractError("ConsistencyStudy: n_grid must be strictly increasing");
    }
  }
  if (config.replicates < 1) throw ContractError("ConsistencyStudy: replicates must be >= 1");

  ConsistencyTable table;
  const Rng master(config.seed);
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    const int n = config.n_grid[g];
    ConsistencyRow row;
    row.n = n;
    row.k = ScheduleK(config.schedule, n, config.fixed_k);
    row.replicates = config.replicates;
    std::vector<double> errors;
    const Rng n_rng = master.Derive(static_cast<std::uint64_t>(n));
    for (int r = 0; r < config.replicates; ++r) {
      Rng rng = n_rng.Derive(static_cast<std::uint64_t>(r));
      SimulatedData sim;
      if (config.family == Family::kLogistic) {
        sim = SimulateLogistic(n, rng);
      } else {
        LinearSimulationConfig lin = config.linear;
        lin.n = n;
        sim = SimulateLinear(lin, rng);
      }
      const ScoreModel model(config.family, sim.data.p());
      const SolveReport fit = FitRobustMEstimator(model, sim.data, row.k, config.solver);
      if (fit.converged) ++row.n_converged;
      errors.push_back((fit.theta_hat - sim.beta).norm());
    }
    row.median_error = Median(std::move(errors));
    table.rows.push_back(row);
  }

  table.strictly_decreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].median_error < table.rows[i - 1].median_error)) {
      table.strictly_decreasing = false;
    }
  }
  if (table.rows.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (const auto& r : table.rows) {
      mx += std::log(static_cast<double>(r.n));
      my += std::log(r.median_error);
    }
    mx /= static_cast<double>(table.rows.size());
    my /= static_cast<double>(table.rows.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& r : table.rows) {
      const double dx = std::log(static_cast<double>(r.n)) - mx;
      sxy += dx * (std::log(r.median_error) - my);
      sxx += dx * dx;
    }
    table.log_log_slope = sxy / sxx;
  }
  return table;
}

}  // namespace pmest::harness
