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

#include "pmest/harness/simulate.h"

#include <algorithm>
#include <cmath>

#include "pmest/errors.h"

namespace pmest::harness {

SimulatedData SimulateLogistic(int n, Rng& rng) {
  if (n < 1) throw ContractError("SimulateLogistic: n must be >= 1");
  const Eigen::Index p = static_cast<Eigen::Index>(kLogisticBeta.size());
  SimulatedData out;
  out.beta = Eigen::Map<const Eigen::VectorXd>(kLogisticBeta.data(), p);
  out.data.x.resize(n, p);
  out.data.y.resize(n);
  for (int i = 0; i < n; ++i) {
    out.data.x(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < p; ++j) out.data.x(i, j) = rng.Uniform(-1.0, 1.0);
    const double prob = Logistic(out.data.x.row(i).dot(out.beta));
    out.data.y(i) = rng.Uniform(0.0, 1.0) < prob ? 1.0 : 0.0;
  }
  return out;
}

SimulatedData SimulateLogistic(int n, std::uint64_t seed) {
  Rng rng(seed);
  return SimulateLogistic(n, rng);
}

SimulatedData SimulateLinear(const LinearSimulationConfig& config, Rng& rng) {
  if (config.n < 1) throw ContractError("SimulateLinear: n must be >= 1");
  if (config.beta_star.empty()) throw ContractError("SimulateLinear: beta_star is empty");
  if (!(config.noise_sd >= 0.0)) throw ContractError("SimulateLinear: noise_sd must be >= 0");
  const auto p = static_cast<Eigen::Index>(config.beta_star.size());
  const Eigen::VectorXd beta_star = Eigen::Map<const Eigen::VectorXd>(config.beta_star.data(), p);
  const double scale =
      config.bounded ? beta_star.lpNorm<1>() + 3.0 * config.noise_sd : 1.0;
  if (!(scale > 0.0)) throw ContractError("SimulateLinear: beta_star and noise_sd are both zero");

  SimulatedData out;
  out.beta = beta_star / scale;
  out.data.x.resize(config.n, p);
  out.data.y.resize(config.n);
  for (int i = 0; i < config.n; ++i) {
    out.data.x(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < p; ++j) out.data.x(i, j) = rng.Uniform(-1.0, 1.0);
    double y = out.data.x.row(i).dot(beta_star);
    if (config.noise_sd > 0.0) y += config.noise_sd * rng.Normal();
    y /= scale;
    out.data.y(i) = config.bounded ? std::clamp(y, -1.0, 1.0) : y;
  }
  return out;
}

SimulatedData SimulateLinear(const LinearSimulationConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  return SimulateLinear(config, rng);
}

}  // namespace pmest::harness
