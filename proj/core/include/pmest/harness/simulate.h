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

#ifndef PMEST_HARNESS_SIMULATE_H_
#define PMEST_HARNESS_SIMULATE_H_

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "pmest/harness/config.h"
#include "pmest/rng.h"
#include "pmest/score_model.h"

namespace pmest::harness {

// Coefficients of the n = 100 logistic simulation, intercept first.
inline constexpr std::array<double, 7> kLogisticBeta = {0.0, -1.0, -0.5, -0.25, 0.0, 0.75, 1.5};

struct SimulatedData {
  Dataset data;
  Eigen::VectorXd beta;  // generating coefficients on the returned scale
};

// x_i = (1, U[-1,1]^6), y_i = 1{U_i < eta(x_i^T beta)} with kLogisticBeta.
SimulatedData SimulateLogistic(int n, Rng& rng);
SimulatedData SimulateLogistic(int n, std::uint64_t seed);

// x_i = (1, U[-1,1]^{p-1}), y_i = x_i^T beta* + noise_sd N(0, 1) with
// p = beta_star.size(). When `bounded`, y is divided by
// c = ||beta*||_1 + 3 noise_sd and clamped to [-1, 1]; beta is then beta*/c.
SimulatedData SimulateLinear(const LinearSimulationConfig& config, Rng& rng);
SimulatedData SimulateLinear(const LinearSimulationConfig& config, std::uint64_t seed);

}  // namespace pmest::harness

#endif  // PMEST_HARNESS_SIMULATE_H_
