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

#include "pmest/harness/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pmest/errors.h"

namespace pmest::harness {
namespace {

using nlohmann::json;

constexpr std::string_view kAttitudeCsv =
    "rating,complaints,privileges,learning,raises,critical,advance\n"
    "43,51,30,39,61,92,45\n63,64,51,54,63,73,47\n71,70,68,69,76,86,48\n"
    "61,63,45,47,54,84,35\n81,78,56,66,71,83,47\n43,55,49,44,54,49,34\n"
    "58,67,42,56,66,68,35\n71,75,50,55,70,66,41\n72,82,72,67,71,83,31\n"
    "67,61,45,47,62,80,41\n64,53,53,58,58,67,34\n67,60,47,39,59,74,41\n"
    "69,62,57,42,55,63,25\n68,83,83,45,59,77,35\n77,77,54,72,79,77,46\n"
    "81,90,50,72,60,54,36\n74,85,64,69,79,79,63\n65,60,65,75,55,80,60\n"
    "65,70,46,57,75,85,46\n50,58,68,54,64,78,52\n50,40,33,34,43,64,33\n"
    "64,61,52,62,66,80,41\n53,66,52,50,63,80,37\n40,37,42,58,50,57,49\n"
    "63,54,42,48,66,75,33\n66,77,66,63,88,76,72\n78,75,58,74,80,78,49\n"
    "48,57,44,45,51,83,38\n85,85,71,71,77,74,55\n82,82,39,59,64,78,39\n";

struct NamedEstimator {
  std::string_view name;
  EstimatorKind kind;
  NormKind norm;
  double q;
};

constexpr NamedEstimator kNamedEstimators[] = {
    {"nonprivate", EstimatorKind::kNonprivate, NormKind::kL2, 0.5},
    {"robust", EstimatorKind::kRobust, NormKind::kL2, 0.5},
    {"perturbed", EstimatorKind::kPerturbed, NormKind::kL2, 0.5},
    {"knorm_suffstats_l1", EstimatorKind::kKNormSuffStats, NormKind::kL1, 0.5},
    {"knorm_suffstats_l2", EstimatorKind::kKNormSuffStats, NormKind::kL2, 0.5},
    {"knorm_suffstats_linf", EstimatorKind::kKNormSuffStats, NormKind::kLinf, 0.5},
    {"opm_l1", EstimatorKind::kOpmLogistic, NormKind::kL1, 0.5},
    {"opm_l2", EstimatorKind::kOpmLogistic, NormKind::kL2, 0.5},
    {"opm_linf", EstimatorKind::kOpmLogistic, NormKind::kLinf, 0.5},
    {"opm_linf_star", EstimatorKind::kOpmLogistic, NormKind::kLinf, 0.85},
};

std::vector<EstimatorSpec> Estimators(std::initializer_list<std::string_view> names) {
  std::vector<EstimatorSpec> out;
  for (auto n : names) out.push_back(EstimatorFromName(n));
  return out;
}

template <typename Enum, std::size_t N>
Enum ParseEnum(const std::string& value, const std::pair<std::string_view, Enum> (&table)[N],
               const char* field) {
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  throw ContractError(std::string("config field '") + field + "': unknown value '" + value + "'");
}

template <typename Enum, std::size_t N>
std::string_view EnumName(Enum e, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == e) return name;
  }
  return "unknown";
}

constexpr std::pair<std::string_view, DatasetKind> kDatasets[] = {
    {"attitude_csv", DatasetKind::kAttitudeCsv},
    {"synthetic_linear", DatasetKind::kSyntheticLinear},
    {"synthetic_logistic", DatasetKind::kSyntheticLogistic},
};
constexpr std::pair<std::string_view, Metric> kMetrics[] = {
    {"log_l2_coef_error", Metric::kLogL2CoefError},
    {"log_l2_prediction_error", Metric::kLogL2PredictionError},
};
constexpr std::pair<std::string_view, Aggregation> kAggregations[] = {
    {"log_of_mean", Aggregation::kLogOfMean},
    {"mean_of_log", Aggregation::kMeanOfLog},
};
constexpr std::pair<std::string_view, CoefReference> kReferences[] = {
    {"truth", CoefReference::kTruth},
    {"nonprivate", CoefReference::kNonprivate},
};
constexpr std::pair<std::string_view, EstimatorKind> kKinds[] = {
    {"nonprivate", EstimatorKind::kNonprivate},
    {"robust", EstimatorKind::kRobust},
    {"perturbed", EstimatorKind::kPerturbed},
    {"knorm_suffstats", EstimatorKind::kKNormSuffStats},
    {"opm", EstimatorKind::kOpmLogistic},
};

EstimatorSpec ParseEstimator(const json& j) {
  if (j.is_string()) return EstimatorFromName(j.get<std::string>());
  if (!j.is_object()) throw ContractError("config: estimator entries must be names or objects");
  EstimatorSpec spec;
  spec.kind = ParseEnum(j.at("kind").get<std::string>(), kKinds, "estimators.kind");
  if (j.contains("norm")) spec.norm = ParseNorm(j["norm"].get<std::string>());
  spec.q = j.value("q", 0.5);
  spec.label = j.value("label", std::string(EnumName(spec.kind, kKinds)));
  return spec;
}

std::vector<double> ParseKGrid(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    return EvenGrid(j.at("from").get<double>(), j.at("to").get<double>(), j.at("count").get<int>());
  }
  throw ContractError("config field 'k_grid' must be an array or {from, to, count}");
}

}  // namespace

std::string_view BuiltinAttitudeCsv() { return kAttitudeCsv; }

std::string_view DatasetName(DatasetKind kind) { return EnumName(kind, kDatasets); }
std::string_view MetricName(Metric metric) { return EnumName(metric, kMetrics); }

EstimatorSpec EstimatorFromName(std::string_view name) {
  for (const auto& e : kNamedEstimators) {
    if (e.name == name) return {std::string(e.name), e.kind, e.norm, e.q};
  }
  throw ContractError("unknown estimator '" + std::string(name) + "'");
}

std::vector<double> EvenGrid(double lo, double hi, int count) {
  if (count < 1) throw ContractError("EvenGrid: count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  grid.back() = hi;
  return grid;
}

ExperimentConfig PresetConfig(std::string_view name) {
  ExperimentConfig c;
  if (name == "logistic") {
    c.dataset = DatasetKind::kSyntheticLogistic;
    c.estimators = Estimators({"nonprivate", "perturbed", "opm_l1", "opm_l2", "opm_linf",
                               "opm_linf_star"});
    c.k_grid = EvenGrid(0.01, 2.0, 20);
    c.metric = Metric::kLogL2CoefError;
    c.reference = CoefReference::kTruth;
    c.replications = 100;
  } else if (name == "attitude") {
    c.dataset = DatasetKind::kAttitudeCsv;
    c.estimators = Estimators({"nonprivate", "robust", "perturbed", "knorm_suffstats_l1",
                               "knorm_suffstats_l2", "knorm_suffstats_linf"});
    c.k_grid = EvenGrid(0.01, 2.0, 20);
    c.metric = Metric::kLogL2PredictionError;
    c.reference = CoefReference::kNonprivate;
    c.replications = 100;
  } else if (name == "housing") {
    c.dataset = DatasetKind::kSyntheticLinear;
    // The reference is the least-squares fit itself, so it is not plotted.
    c.estimators = Estimators({"robust", "perturbed", "knorm_suffstats_l1", "knorm_suffstats_l2",
                               "knorm_suffstats_linf"});
    c.linear.beta_star = {0.0, 1.0};
    c.k_grid = EvenGrid(0.01, 2.0, 10);
    c.metric = Metric::kLogL2CoefError;
    c.reference = CoefReference::kNonprivate;
    c.replications = 20;
  } else {
    throw ContractError("unknown preset '" + std::string(name) + "'");
  }
  c.epsilon = 0.1;
  c.master_seed = 20200101;
  return c;
}

ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw IoError("config must be a JSON object");

  try {
    ExperimentConfig c = PresetConfig(j.value("preset", std::string("logistic")));
    if (j.contains("dataset")) {
      c.dataset = ParseEnum(j["dataset"].get<std::string>(), kDatasets, "dataset");
    }
    if (j.contains("csv_path")) {
      std::filesystem::path p = j["csv_path"].get<std::string>();
      c.csv_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    if (j.contains("preprocess")) {
      const json& pp = j["preprocess"];
      c.preprocess.response = pp.value("response", c.preprocess.response);
      c.preprocess.log_columns = pp.value("log_columns", c.preprocess.log_columns);
      c.preprocess.drop_columns = pp.value("drop_columns", c.preprocess.drop_columns);
      c.preprocess.scale_response = pp.value("scale_response", c.preprocess.scale_response);
    }
    if (j.contains("synthetic_linear")) {
      const json& s = j["synthetic_linear"];
      c.linear.n = s.value("n", c.linear.n);
      c.linear.beta_star = s.value("beta_star", c.linear.beta_star);
      c.linear.noise_sd = s.value("noise_sd", c.linear.noise_sd);
      c.linear.bounded = s.value("bounded", c.linear.bounded);
    }
    if (j.contains("synthetic_logistic")) {
      c.logistic.n = j["synthetic_logistic"].value("n", c.logistic.n);
    }
    if (j.contains("estimators")) {
      c.estimators.clear();
      for (const json& e : j["estimators"]) c.estimators.push_back(ParseEstimator(e));
    }
    if (j.contains("k_grid")) c.k_grid = ParseKGrid(j["k_grid"]);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.replications = j.value("replications", c.replications);
    c.master_seed = j.value("master_seed", c.master_seed);
    if (j.contains("metric")) c.metric = ParseEnum(j["metric"].get<std::string>(), kMetrics, "metric");
    if (j.contains("aggregation")) {
      c.aggregation = ParseEnum(j["aggregation"].get<std::string>(), kAggregations, "aggregation");
    }
    if (j.contains("reference")) {
      c.reference = ParseEnum(j["reference"].get<std::string>(), kReferences, "reference");
    }
    if (j.contains("solver")) {
      c.solver.tol = j["solver"].value("tol", c.solver.tol);
      c.solver.max_iter = j["solver"].value("max_iter", c.solver.max_iter);
    }
    ValidateConfig(c);
    return c;
  } catch (const json::exception& e) {
    throw ContractError(std::string("config has a field of the wrong type: ") + e.what());
  }
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseExperimentConfig(buf.str(), path.parent_path());
}

void ValidateConfig(const ExperimentConfig& c) {
  if (c.k_grid.empty()) throw ContractError("config: k_grid is empty");
  for (double k : c.k_grid) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ContractError("config: k_grid values must be > 0");
  }
  if (c.replications < 1) throw ContractError("config: replications must be >= 1");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
    throw ContractError("config: epsilon must be positive");
  }
  if (c.estimators.empty()) throw ContractError("config: no estimators");
  if (!(c.solver.tol > 0.0) || c.solver.max_iter < 0) throw ContractError("config: bad solver");
  const bool logistic = c.dataset == DatasetKind::kSyntheticLogistic;
  for (std::size_t i = 0; i < c.estimators.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (c.estimators[i].label == c.estimators[j].label) {
        throw ContractError("config: duplicate estimator label '" + c.estimators[i].label + "'");
      }
    }
  }
  for (const auto& e : c.estimators) {
    if (e.kind == EstimatorKind::kKNormSuffStats && logistic) {
      throw ContractError("config: " + e.label + " needs a linear dataset");
    }
    if (e.kind == EstimatorKind::kOpmLogistic && !logistic) {
      throw ContractError("config: " + e.label + " needs the logistic dataset");
    }
    if (!(e.q > 0.0 && e.q < 1.0)) throw ContractError("config: q must lie in (0, 1)");
  }
  if (c.dataset == DatasetKind::kSyntheticLinear) {
    if (c.linear.n < 1 || c.linear.beta_star.empty() || !(c.linear.noise_sd >= 0.0)) {
      throw ContractError("config: invalid synthetic_linear block");
    }
  }
  if (logistic && c.logistic.n < 1) throw ContractError("config: synthetic_logistic.n must be >= 1");
  if (c.metric == Metric::kLogL2CoefError && c.reference == CoefReference::kTruth &&
      c.dataset == DatasetKind::kAttitudeCsv) {
    throw ContractError("config: the attitude data has no true coefficients; use reference=nonprivate");
  }
}

std::string CanonicalConfigJson(const ExperimentConfig& c) {
  json j;
  j["dataset"] = DatasetName(c.dataset);
  j["csv_path"] = c.csv_path.generic_string();
  j["preprocess"] = {{"response", c.preprocess.response},
                     {"log_columns", c.preprocess.log_columns},
                     {"drop_columns", c.preprocess.drop_columns},
                     {"scale_response", c.preprocess.scale_response}};
  j["synthetic_linear"] = {{"n", c.linear.n},
                           {"beta_star", c.linear.beta_star},
                           {"noise_sd", c.linear.noise_sd},
                           {"bounded", c.linear.bounded}};
  j["synthetic_logistic"] = {{"n", c.logistic.n}};
  json est = json::array();
  for (const auto& e : c.estimators) {
    est.push_back({{"label", e.label},
                   {"kind", EnumName(e.kind, kKinds)},
                   {"norm", NormName(e.norm)},
                   {"q", e.q}});
  }
  j["estimators"] = est;
  j["k_grid"] = c.k_grid;
  j["epsilon"] = c.epsilon;
  j["replications"] = c.replications;
  j["master_seed"] = c.master_seed;
  j["metric"] = MetricName(c.metric);
  j["aggregation"] = EnumName(c.aggregation, kAggregations);
  j["reference"] = EnumName(c.reference, kReferences);
  j["solver"] = {{"tol", c.solver.tol}, {"max_iter", c.solver.max_iter}};
  return j.dump();
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : CanonicalConfigJson(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pmest::harness
