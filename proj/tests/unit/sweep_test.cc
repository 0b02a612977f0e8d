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
#include <cmath>
#include <set>
#include <utility>

#include "gtest/gtest.h"
#include "pmest/errors.h"

namespace pmest::harness {
namespace {

ExperimentConfig SmallLogistic() {
  ExperimentConfig c = PresetConfig("logistic");
  c.replications = 6;
  c.k_grid = {0.1, 1.0, 2.0};
  return c;
}

ExperimentConfig SmallAttitude() {
  ExperimentConfig c = PresetConfig("attitude");
  c.replications = 5;
  c.k_grid = {0.25, 1.5};
  return c;
}

void ExpectSameBits(double a, double b) {
  if (std::isnan(a)) {
    EXPECT_TRUE(std::isnan(b));
  } else {
    EXPECT_EQ(a, b);
  }
}

void ExpectIdentical(const std::vector<MetricRecord>& a, const std::vector<MetricRecord>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].estimator, b[i].estimator);
    EXPECT_EQ(a[i].k, b[i].k);
    ExpectSameBits(a[i].metric_value, b[i].metric_value);
    ExpectSameBits(a[i].metric_value_converged, b[i].metric_value_converged);
    EXPECT_EQ(a[i].n_converged, b[i].n_converged);
    EXPECT_EQ(a[i].n_total, b[i].n_total);
  }
}

TEST(RunSweepTest, EveryPairExactlyOnceInOrder) {
  const ExperimentConfig c = SmallLogistic();
  const auto records = RunSweep(c);
  ASSERT_EQ(records.size(), c.estimators.size() * c.k_grid.size());
  std::set<std::pair<std::string, double>> seen;
  std::size_t i = 0;
  for (const auto& e : c.estimators) {
    for (double k : c.k_grid) {
      EXPECT_EQ(records[i].estimator, e.label);
      EXPECT_EQ(records[i].k, k);
      EXPECT_EQ(records[i].n_total, c.replications);
      EXPECT_GE(records[i].n_converged, 0);
      EXPECT_LE(records[i].n_converged, records[i].n_total);
      EXPECT_TRUE(std::isfinite(records[i].metric_value));
      seen.emplace(e.label, k);
      ++i;
    }
  }
  EXPECT_EQ(seen.size(), records.size());
}

TEST(RunSweepTest, JobsDoNotChangeResults) {
  const ExperimentConfig c = SmallLogistic();
  ExpectIdentical(RunSweep(c, 1), RunSweep(c, 3));
  ExpectIdentical(RunSweep(c, 1), RunSweep(c, 1));
}

TEST(RunSweepTest, SeedChangesResults) {
  ExperimentConfig a = SmallLogistic();
  ExperimentConfig b = a;
  b.master_seed += 1;
  EXPECT_NE(RunSweep(a)[0].metric_value, RunSweep(b)[0].metric_value);
}

TEST(RunSweepTest, KIndependentLinesAreFlat) {
  const ExperimentConfig c = SmallAttitude();
  const auto records = RunSweep(c);
  for (const auto& r : records) {
    if (r.estimator == "nonprivate" || r.estimator.starts_with("knorm")) {
      const auto& first = *std::find_if(records.begin(), records.end(),
                                        [&](const auto& x) { return x.estimator == r.estimator; });
      EXPECT_EQ(r.metric_value, first.metric_value) << r.estimator;
      EXPECT_EQ(r.n_converged, first.n_converged) << r.estimator;
    }
  }
}

TEST(RunSweepTest, LogisticMleLowestAtTheReference) {
  // Relative to the MLE reference, the MLE itself has zero error, so every
  // other estimator sits above it.
  ExperimentConfig c = SmallLogistic();
  c.reference = CoefReference::kNonprivate;
  const auto records = RunSweep(c);
  for (const auto& r : records) {
    if (r.estimator == "nonprivate") {
      EXPECT_EQ(r.metric_value, -INFINITY);
    } else {
      EXPECT_GT(r.metric_value, -INFINITY) << r.estimator;
    }
  }
}

TEST(RunSweepTest, OtherEstimatorsDoNotPerturbStreams) {
  ExperimentConfig full = SmallLogistic();
  ExperimentConfig alone = full;
  alone.estimators = {EstimatorFromName("perturbed")};
  const auto a = RunSweep(full);
  const auto b = RunSweep(alone);
  std::vector<MetricRecord> from_full;
  for (const auto& r : a) {
    if (r.estimator == "perturbed") from_full.push_back(r);
  }
  ExpectIdentical(from_full, b);
}

TEST(RunSweepTest, MeanOfLogNeverExceedsLogOfMean) {
  ExperimentConfig c = SmallLogistic();
  const auto lom = RunSweep(c);
  c.aggregation = Aggregation::kMeanOfLog;
  const auto mol = RunSweep(c);
  ASSERT_EQ(lom.size(), mol.size());
  for (std::size_t i = 0; i < lom.size(); ++i) {
    EXPECT_LE(mol[i].metric_value, lom[i].metric_value + 1e-12) << lom[i].estimator;
  }
}

TEST(RunSweepTest, ConvergedOnlyMetricIsConsistent) {
  const auto records = RunSweep(SmallLogistic());
  for (const auto& r : records) {
    if (r.n_converged == r.n_total) EXPECT_EQ(r.metric_value, r.metric_value_converged);
    if (r.n_converged == 0) EXPECT_TRUE(std::isnan(r.metric_value_converged));
  }
}

TEST(RunSweepTest, VanishingPrivacyRecoversNonprivateLine) {
  ExperimentConfig c = PresetConfig("housing");
  c.linear.n = 10000;
  c.linear.beta_star = {0.1, -0.5, 0.5};
  c.replications = 1;
  c.epsilon = 1e6;
  c.k_grid = {1e6};
  c.metric = Metric::kLogL2PredictionError;
  c.estimators = {EstimatorFromName("nonprivate"), EstimatorFromName("perturbed")};
  const auto records = RunSweep(c);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_NEAR(records[1].metric_value, records[0].metric_value, 1e-3);
}

TEST(RunSweepTest, ThrowingFitsAreCountedAsFailures) {
  // Unbounded responses leave the bounded-score domain: the perturbed fit
  // refuses them while least squares does not care.
  ExperimentConfig c = PresetConfig("housing");
  c.linear.n = 200;
  c.linear.bounded = false;
  c.linear.noise_sd = 1.0;
  c.replications = 3;
  c.k_grid = {1.0};
  c.metric = Metric::kLogL2PredictionError;
  c.estimators = {EstimatorFromName("nonprivate"), EstimatorFromName("perturbed")};
  const auto records = RunSweep(c);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_TRUE(std::isfinite(records[0].metric_value));
  EXPECT_EQ(records[0].n_converged, 3);
  EXPECT_TRUE(std::isnan(records[1].metric_value));
  EXPECT_EQ(records[1].n_converged, 0);
  EXPECT_EQ(records[1].n_total, 3);
}

TEST(RunSweepTest, InvalidConfigThrows) {
  ExperimentConfig c = SmallLogistic();
  c.k_grid.clear();
  EXPECT_THROW(RunSweep(c), ContractError);
}

TEST(StreamIdTest, DistinctLabelsDistinctStreams) {
  EXPECT_EQ(StreamId("perturbed"), StreamId("perturbed"));
  EXPECT_NE(StreamId("opm_l1"), StreamId("opm_l2"));
  EXPECT_EQ(StreamId(""), 0xcbf29ce484222325ULL);
}

}  // namespace
}  // namespace pmest::harness
