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

#ifndef PMEST_NOISE_H_
#define PMEST_NOISE_H_

#include <string_view>

#include <Eigen/Core>

#include "pmest/rng.h"

namespace pmest {

enum class NormKind { kL1, kL2, kLinf };

std::string_view NormName(NormKind norm);
// Accepts "l1", "l2", "linf".
NormKind ParseNorm(std::string_view name);

double VectorNorm(const Eigen::VectorXd& v, NormKind norm);

// b = radius * direction, with radius ~ Gamma(p, scale) and direction
// uniform (cone measure) on the unit sphere of `norm`.
struct NoiseDraw {
  Eigen::VectorXd b;
  NormKind norm = NormKind::kL2;
  double scale = 0.0;   // Gamma scale of the radius
  double radius = 0.0;  // ||b|| in `norm`
};

// Uniform direction on the unit sphere of `norm` in R^p:
//   L2:   normalized standard Gaussian vector
//   L1:   Dirichlet(1, ..., 1) magnitudes with independent random signs
//   Linf: one uniformly chosen coordinate set to +-1, the rest U[-1, 1]
Eigen::VectorXd SampleUnitSphere(Eigen::Index p, NormKind norm, Rng& rng);

// Objective-perturbation noise with density proportional to
// exp(-(epsilon / (2 xi)) ||b||_2), i.e. radius ~ Gamma(p, 2 xi / epsilon).
// Throws ContractError unless p >= 1 and epsilon, xi > 0.
NoiseDraw SampleL2Exponential(Eigen::Index p, double epsilon, double xi, Rng& rng);

// K-norm mechanism noise with density proportional to
// exp(-epsilon ||z||_K / sensitivity), i.e. radius ~ Gamma(p, sensitivity / epsilon).
NoiseDraw SampleKNorm(Eigen::Index p, double epsilon, double sensitivity, NormKind norm, Rng& rng);

}  // namespace pmest

#endif  // PMEST_NOISE_H_
