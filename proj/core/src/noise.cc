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

#include "pmest/noise.h"

#include <cmath>
#include <string>

#include "pmest/errors.h"

namespace pmest {

std::string_view NormName(NormKind norm) {
  switch (norm) {
    case NormKind::kL1:
      return "l1";
    case NormKind::kL2:
      return "l2";
    case NormKind::kLinf:
      return "linf";
  }
  return "unknown";
}

NormKind ParseNorm(std::string_view name) {
  if (name == "l1") return NormKind::kL1;
  if (name == "l2") return NormKind::kL2;
  if (name == "linf") return NormKind::kLinf;
  throw ContractError("unknown norm '" + std::string(name) + "'");
}

double VectorNorm(const Eigen::VectorXd& v, NormKind norm) {
  switch (norm) {
    case NormKind::kL1:
      return v.lpNorm<1>();
    case NormKind::kL2:
      return v.norm();
    case NormKind::kLinf:
      return v.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

Eigen::VectorXd SampleUnitSphere(Eigen::Index p, NormKind norm, Rng& rng) {
  if (p < 1) throw ContractError("SampleUnitSphere: p must be >= 1");
  Eigen::VectorXd u(p);
  switch (norm) {
    case NormKind::kL2: {
      double n2 = 0.0;
      do {
        for (Eigen::Index j = 0; j < p; ++j) u(j) = rng.Normal();
        n2 = u.squaredNorm();
      } while (n2 == 0.0);
      u /= std::sqrt(n2);
      break;
    }
    case NormKind::kL1: {
      for (Eigen::Index j = 0; j < p; ++j) u(j) = rng.Exponential();
      u /= u.sum();
      for (Eigen::Index j = 0; j < p; ++j) {
        if (rng.Bernoulli(0.5)) u(j) = -u(j);
      }
      break;
    }
    case NormKind::kLinf: {
      for (Eigen::Index j = 0; j < p; ++j) u(j) = rng.Uniform(-1.0, 1.0);
      const auto face = static_cast<Eigen::Index>(rng.Index(static_cast<std::uint64_t>(p)));
      u(face) = rng.Bernoulli(0.5) ? 1.0 : -1.0;
      break;
    }
  }
  return u;
}

namespace {

NoiseDraw SampleRadial(Eigen::Index p, double scale, NormKind norm, Rng& rng) {
  NoiseDraw draw;
  draw.norm = norm;
  draw.scale = scale;
  const Eigen::VectorXd direction = SampleUnitSphere(p, norm, rng);
  draw.radius = rng.Gamma(static_cast<double>(p), scale);
  draw.b = draw.radius * direction;
  return draw;
}

void CheckPositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ContractError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

NoiseDraw SampleL2Exponential(Eigen::Index p, double epsilon, double xi, Rng& rng) {
  if (p < 1) throw ContractError("SampleL2Exponential: p must be >= 1");
  CheckPositive(epsilon, "epsilon");
  CheckPositive(xi, "xi");
  return SampleRadial(p, 2.0 * xi / epsilon, NormKind::kL2, rng);
}

NoiseDraw SampleKNorm(Eigen::Index p, double epsilon, double sensitivity, NormKind norm,
                      Rng& rng) {
  if (p < 1) throw ContractError("SampleKNorm: p must be >= 1");
  CheckPositive(epsilon, "epsilon");
  CheckPositive(sensitivity, "sensitivity");
  return SampleRadial(p, sensitivity / epsilon, norm, rng);
}

}  // namespace pmest
