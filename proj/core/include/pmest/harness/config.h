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

#ifndef PMEST_HARNESS_CONFIG_H_
#define PMEST_HARNESS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pmest/noise.h"
#include "pmest/preprocess.h"
#include "pmest/solver.h"

namespace pmest::harness {

enum class DatasetKind { kAttitudeCsv, kSyntheticLinear, kSyntheticLogistic };
enum class Metric { kLogL2CoefError, kLogL2PredictionError };
// How per-replication errors are combined before plotting.
enum class Aggregation { kLogOfMean, kMeanOfLog };
// Reference for the coefficient error: the generating coefficients, or the
// non-private fit on the same replication's data.
enum class CoefReference { kTruth, kNonprivate };

enum class EstimatorKind {
  kNonprivate,      // least squares / logistic MLE
  kRobust,          // RobHyt M-estimator without noise
  kPerturbed,       // RobHyt objective perturbation
  kKNormSuffStats,  // linear only
  kOpmLogistic,     // logistic only
};

struct EstimatorSpec {
  std::string label;
  EstimatorKind kind = EstimatorKind::kNonprivate;
  NormKind norm = NormKind::kL2;
  double q = 0.5;

  bool depends_on_k() const {
    return kind == EstimatorKind::kRobust || kind == EstimatorKind::kPerturbed;
  }
};

// Recognized names: nonprivate, robust, perturbed, knorm_suffstats_{l1,l2,linf},
// opm_{l1,l2,linf} (q = 0.5) and opm_linf_star (q = 0.85).
EstimatorSpec EstimatorFromName(std::string_view name);

struct LinearSimulationConfig {
  int n = 5000;
  std::vector<double> beta_star = {0.1, -0.5, 0.5};  // intercept first
  double noise_sd = 0.2;
  // Divide y by ||beta*||_1 + 3 noise_sd and clamp to [-1, 1].
  bool bounded = true;
};

struct LogisticSimulationConfig {
  int n = 100;
};

// The experiment config file is JSON; every field has a default.
struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::kSyntheticLogistic;
  std::filesystem::path csv_path;  // empty: built-in attitude table
  PreprocessConfig preprocess{"rating", {}, {}, true};
  LinearSimulationConfig linear;
  LogisticSimulationConfig logistic;
  std::vector<EstimatorSpec> estimators;
  std::vector<double> k_grid;
  double epsilon = 0.1;
  int replications = 100;
  std::uint64_t master_seed = 1;
  Metric metric = Metric::kLogL2CoefError;
  Aggregation aggregation = Aggregation::kLogOfMean;
  CoefReference reference = CoefReference::kTruth;
  SolverOptions solver;
};

// `count` evenly spaced points from lo to hi inclusive.
std::vector<double> EvenGrid(double lo, double hi, int count);

// Preset experiments: "logistic" (n = 100 simulation), "attitude",
// "housing" (synthetic large-n linear stand-in).
ExperimentConfig PresetConfig(std::string_view name);

// Parses a JSON config. Missing fields take the defaults of `preset`
// (field "preset", default "logistic"). Relative csv paths resolve against
// `base_dir`. Throws ContractError on invalid values.
ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       const std::filesystem::path& base_dir = {});
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Throws ContractError if an invariant fails (empty grid, k <= 0, H < 1,
// estimator not available for the dataset's family, ...).
void ValidateConfig(const ExperimentConfig& config);

// Canonical JSON of the effective config (sorted keys) and its FNV-1a hash.
std::string CanonicalConfigJson(const ExperimentConfig& config);
std::string ConfigHash(const ExperimentConfig& config);

std::string_view DatasetName(DatasetKind kind);
std::string_view MetricName(Metric metric);

// The 30 x 7 attitude survey table (percent favorable responses).
std::string_view BuiltinAttitudeCsv();

}  // namespace pmest::harness

#endif  // PMEST_HARNESS_CONFIG_H_
