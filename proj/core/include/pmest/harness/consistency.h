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

#ifndef PMEST_HARNESS_CONSISTENCY_H_
#define PMEST_HARNESS_CONSISTENCY_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "pmest/harness/config.h"
#include "pmest/score_model.h"
#include "pmest/solver.h"

namespace pmest::harness {

// How the tuning constant grows (or shrinks) with the sample size.
enum class KSchedule {
  kLogLogN,  // k_n = log(log(n)), diverging
  kInvLogN,  // k_n = 1 / log(n), vanishing; needs a symmetric score
  kFixed,    // k_n = fixed_k
};

std::string_view KScheduleName(KSchedule schedule);
KSchedule ParseKSchedule(std::string_view name);  // loglog_n | inv_log_n | fixed

// Throws ContractError where the schedule is undefined or non-positive
// (log log n needs n >= 3, 1/log n needs n >= 2).
double ScheduleK(KSchedule schedule, int n, double fixed_k);

struct ConsistencyConfig {
  Family family = Family::kLinear;
  KSchedule schedule = KSchedule::kLogLogN;
  double fixed_k = 1e6;
  std::vector<int> n_grid = {100, 1000, 10000};
  int replicates = 20;
  std::uint64_t seed = 1;
  // Linear data: Gaussian errors, unbounded, so the score is symmetric.
  LinearSimulationConfig linear{0, {0.5, -1.0, 0.75}, 1.0, false};
  SolverOptions solver;
};

struct ConsistencyRow {
  int n = 0;
  double k = 0.0;
  double median_error = 0.0;  // median over replicates of ||theta_hat - theta_0||_2
  int n_converged = 0;
  int replicates = 0;
};

struct ConsistencyTable {
  std::vector<ConsistencyRow> rows;
  // Least-squares slope of log(median_error) against log(n).
  double log_log_slope = 0.0;
  bool strictly_decreasing = false;
};

// Fits the non-private RobHyt M-estimator with k_n from the schedule on
// fresh synthetic data at every n. Throws ContractError unless n_grid is
// strictly increasing and replicates >= 1.
ConsistencyTable ConsistencyStudy(const ConsistencyConfig& config);

}  // namespace pmest::harness

#endif  // PMEST_HARNESS_CONSISTENCY_H_
