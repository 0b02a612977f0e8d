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

#include "pmest/robhyt.h"

#include <cmath>
#include <numbers>
#include <string>

#include "pmest/errors.h"

namespace pmest {
namespace {

void RequireFinite(double z, const char* fn) {
  if (!std::isfinite(z)) {
    throw DomainError(std::string(fn) + ": score must be finite");
  }
}

}  // namespace

LossSpec::LossSpec(double k) : k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ContractError("LossSpec: tuning constant k must be positive and finite, got " +
                        std::to_string(k));
  }
}

double LogCosh(double x) {
  const double a = std::fabs(x);
  if (a < 1.0) {
    // cosh(x) - 1 = 2 sinh(x/2)^2, exact to rounding even for tiny x.
    const double s = std::sinh(0.5 * a);
    return std::log1p(2.0 * s * s);
  }
  return a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
}

double Sech(double x) {
  const double e = std::exp(-std::fabs(x));
  return 2.0 * e / (1.0 + e * e);
}

double Rho(const LossSpec& spec, double z) {
  RequireFinite(z, "Rho");
  const double k = spec.k();
  const double x = 2.0 * z / k;
  if (std::fabs(x) < 1.0) return 0.5 * k * k * LogCosh(x);
  // Tail form k|z| + (k^2/2)(log1p(e^{-2|x|}) - log 2); stays finite when
  // 2z/k itself overflows.
  return k * std::fabs(z) +
         0.5 * k * k * (std::log1p(std::exp(-2.0 * std::fabs(x))) - std::numbers::ln2);
}

double Psi(const LossSpec& spec, double z) {
  RequireFinite(z, "Psi");
  const double k = spec.k();
  // tanh saturates at exactly +-1, so |psi| <= k holds in floating point.
  return k * std::tanh(2.0 * z / k);
}

double RhoSecond(const LossSpec& spec, double z) {
  RequireFinite(z, "RhoSecond");
  const double s = Sech(2.0 * z / spec.k());
  return 2.0 * s * s;
}

}  // namespace pmest
