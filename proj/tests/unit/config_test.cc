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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "pmest/errors.h"

namespace pmest::harness {
namespace {

TEST(EvenGridTest, EndpointsAreExact) {
  const auto g = EvenGrid(0.01, 2.0, 20);
  ASSERT_EQ(g.size(), 20u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 2.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_NEAR(g[1] - g[0], (2.0 - 0.01) / 19.0, 1e-15);
  EXPECT_EQ(EvenGrid(3.0, 5.0, 1), std::vector<double>{3.0});
  EXPECT_THROW(EvenGrid(0.0, 1.0, 0), ContractError);
}

TEST(PresetConfigTest, PresetsValidate) {
  for (const char* name : {"logistic", "attitude", "housing"}) {
    SCOPED_TRACE(name);
    const ExperimentConfig c = PresetConfig(name);
    EXPECT_NO_THROW(ValidateConfig(c));
    EXPECT_EQ(c.epsilon, 0.1);
    EXPECT_FALSE(c.estimators.empty());
  }
  EXPECT_THROW(PresetConfig("boston"), ContractError);
}

TEST(PresetConfigTest, LogisticPresetShape) {
  const ExperimentConfig c = PresetConfig("logistic");
  EXPECT_EQ(c.dataset, DatasetKind::kSyntheticLogistic);
  EXPECT_EQ(c.logistic.n, 100);
  EXPECT_EQ(c.replications, 100);
  EXPECT_EQ(c.k_grid.size(), 20u);
  EXPECT_EQ(c.metric, Metric::kLogL2CoefError);
  EXPECT_EQ(c.reference, CoefReference::kTruth);
  ASSERT_EQ(c.estimators.size(), 6u);
  EXPECT_EQ(c.estimators.back().label, "opm_linf_star");
  EXPECT_EQ(c.estimators.back().q, 0.85);
}

TEST(PresetConfigTest, AttitudePresetShape) {
  const ExperimentConfig c = PresetConfig("attitude");
  EXPECT_EQ(c.dataset, DatasetKind::kAttitudeCsv);
  EXPECT_EQ(c.metric, Metric::kLogL2PredictionError);
  EXPECT_TRUE(c.preprocess.log_columns.empty());
  EXPECT_EQ(c.preprocess.response, "rating");
}

TEST(EstimatorFromNameTest, KnownNames) {
  EXPECT_EQ(EstimatorFromName("knorm_suffstats_l1").norm, NormKind::kL1);
  EXPECT_EQ(EstimatorFromName("opm_linf").kind, EstimatorKind::kOpmLogistic);
  EXPECT_EQ(EstimatorFromName("opm_linf").q, 0.5);
  EXPECT_TRUE(EstimatorFromName("perturbed").depends_on_k());
  EXPECT_TRUE(EstimatorFromName("robust").depends_on_k());
  EXPECT_FALSE(EstimatorFromName("nonprivate").depends_on_k());
  EXPECT_THROW(EstimatorFromName("laplace"), ContractError);
}

TEST(ParseExperimentConfigTest, EmptyObjectIsLogisticPreset) {
  const ExperimentConfig c = ParseExperimentConfig("{}");
  EXPECT_EQ(CanonicalConfigJson(c), CanonicalConfigJson(PresetConfig("logistic")));
}

TEST(ParseExperimentConfigTest, OverridesFields) {
  const ExperimentConfig c = ParseExperimentConfig(R"({
    "preset": "attitude",
    "epsilon": 0.5,
    "replications": 7,
    "master_seed": 99,
    "k_grid": {"from": 0.5, "to": 1.5, "count": 3},
    "aggregation": "mean_of_log",
    "estimators": ["perturbed", {"kind": "knorm_suffstats", "norm": "linf", "label": "kn"}],
    "solver": {"tol": 1e-6, "max_iter": 50}
  })");
  EXPECT_EQ(c.dataset, DatasetKind::kAttitudeCsv);
  EXPECT_EQ(c.epsilon, 0.5);
  EXPECT_EQ(c.replications, 7);
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.k_grid, (std::vector<double>{0.5, 1.0, 1.5}));
  EXPECT_EQ(c.aggregation, Aggregation::kMeanOfLog);
  ASSERT_EQ(c.estimators.size(), 2u);
  EXPECT_EQ(c.estimators[1].label, "kn");
  EXPECT_EQ(c.estimators[1].kind, EstimatorKind::kKNormSuffStats);
  EXPECT_EQ(c.estimators[1].norm, NormKind::kLinf);
  EXPECT_EQ(c.solver.tol, 1e-6);
  EXPECT_EQ(c.solver.max_iter, 50);
}

TEST(ParseExperimentConfigTest, ArrayGridAndSyntheticBlock) {
  const ExperimentConfig c = ParseExperimentConfig(R"({
    "preset": "housing",
    "k_grid": [0.25, 4],
    "synthetic_linear": {"n": 300, "beta_star": [1, 2, 3], "noise_sd": 0, "bounded": false}
  })");
  EXPECT_EQ(c.k_grid, (std::vector<double>{0.25, 4.0}));
  EXPECT_EQ(c.linear.n, 300);
  EXPECT_EQ(c.linear.beta_star, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(c.linear.noise_sd, 0.0);
  EXPECT_FALSE(c.linear.bounded);
}

TEST(ParseExperimentConfigTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseExperimentConfig("{"), IoError);
  EXPECT_THROW(ParseExperimentConfig("[1, 2]"), IoError);
  EXPECT_THROW(ParseExperimentConfig(R"({"epsilon": "big"})"), ContractError);
  EXPECT_THROW(ParseExperimentConfig(R"({"metric": "mae"})"), ContractError);
  EXPECT_THROW(ParseExperimentConfig(R"({"preset": "nope"})"), ContractError);
  EXPECT_THROW(ParseExperimentConfig(R"({"k_grid": 1.0})"), ContractError);
  EXPECT_THROW(ParseExperimentConfig(R"({"estimators": [3]})"), ContractError);
}

TEST(ValidateConfigTest, RejectsInvalidValues) {
  const auto invalid = [](auto mutate) {
    ExperimentConfig c = PresetConfig("logistic");
    mutate(c);
    return c;
  };
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.k_grid.clear(); })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.k_grid[3] = 0.0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.k_grid[0] = -1.0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.replications = 0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.epsilon = 0.0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.estimators.clear(); })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.solver.tol = 0.0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.estimators[2].q = 1.0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) { c.logistic.n = 0; })), ContractError);
  EXPECT_THROW(ValidateConfig(invalid([](auto& c) {
                 c.estimators.push_back(EstimatorFromName("perturbed"));
               })),
               ContractError);
}

TEST(ValidateConfigTest, EstimatorMustMatchFamily) {
  ExperimentConfig logistic = PresetConfig("logistic");
  logistic.estimators.push_back(EstimatorFromName("knorm_suffstats_l2"));
  EXPECT_THROW(ValidateConfig(logistic), ContractError);

  ExperimentConfig linear = PresetConfig("attitude");
  linear.estimators.push_back(EstimatorFromName("opm_l2"));
  EXPECT_THROW(ValidateConfig(linear), ContractError);
}

TEST(ValidateConfigTest, AttitudeHasNoTruth) {
  ExperimentConfig c = PresetConfig("attitude");
  c.metric = Metric::kLogL2CoefError;
  c.reference = CoefReference::kTruth;
  EXPECT_THROW(ValidateConfig(c), ContractError);
  c.reference = CoefReference::kNonprivate;
  EXPECT_NO_THROW(ValidateConfig(c));
}

TEST(ConfigHashTest, StableAndSensitive) {
  const ExperimentConfig a = PresetConfig("logistic");
  const std::string h = ConfigHash(a);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, ConfigHash(PresetConfig("logistic")));
  ExperimentConfig b = a;
  b.master_seed += 1;
  EXPECT_NE(ConfigHash(b), h);
  b = a;
  b.k_grid.back() = std::nextafter(2.0, 3.0);
  EXPECT_NE(ConfigHash(b), h);
  EXPECT_NE(ConfigHash(PresetConfig("attitude")), h);
}

TEST(ConfigHashTest, CanonicalJsonRoundTrips) {
  const ExperimentConfig a = PresetConfig("attitude");
  const ExperimentConfig b = ParseExperimentConfig(CanonicalConfigJson(a));
  EXPECT_EQ(CanonicalConfigJson(b), CanonicalConfigJson(a));
}

TEST(LoadExperimentConfigTest, RelativeCsvPathResolvesAgainstConfigDir) {
  const auto dir = std::filesystem::temp_directory_path() / "pmest_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "exp.json";
  {
    std::ofstream out(path);
    out << R"({"preset": "attitude", "csv_path": "tables/att.csv"})";
  }
  const ExperimentConfig c = LoadExperimentConfig(path);
  EXPECT_EQ(c.csv_path, dir / "tables/att.csv");
  std::filesystem::remove_all(dir);
  EXPECT_THROW(LoadExperimentConfig(dir / "missing.json"), IoError);
}

TEST(BuiltinAttitudeCsvTest, HeaderAndRowCount) {
  const std::string_view csv = BuiltinAttitudeCsv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "rating,complaints,privileges,learning,raises,critical,advance");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 31);
}

}  // namespace
}  // namespace pmest::harness
