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

#ifndef PMEST_HARNESS_SWEEP_H_
#define PMEST_HARNESS_SWEEP_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pmest/harness/config.h"

namespace pmest::harness {

// One plotted point: an estimator's aggregated error at one k.
struct MetricRecord {
  std::string estimator;
  double k = 0.0;
  double metric_value = 0.0;            // over every replication that produced an estimate
  int n_converged = 0;
  int n_total = 0;
  double metric_value_converged = 0.0;  // over converged replications only (NaN if none)
};

// Runs every estimator at every grid k for `config.replications`
// replications and aggregates the per-replication errors:
//   coefficient error  ||theta - reference||_2
//   prediction error   (1/n) ||X theta - y||_2^2
// followed by log-of-mean (default) or mean-of-log across replications.
//
// Replication h draws from Rng(master_seed).Derive(h); inside it, the data
// and each estimator get their own derived streams, and a k-dependent
// estimator reuses the same stream at every k. Results are therefore
// independent of `jobs` and of which other estimators are configured.
// Estimators that do not depend on k are fitted once per replication.
// A replication whose fit throws is counted in n_total but not in either
// metric. Records come out in config estimator order, then grid order.
std::vector<MetricRecord> RunSweep(const ExperimentConfig& config, int jobs = 1);

// Stream id used for an estimator label.
std::uint64_t StreamId(std::string_view label);

}  // namespace pmest::harness

#endif  // PMEST_HARNESS_SWEEP_H_
