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
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "pmest/errors.h"

namespace pmest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> ZGrid() {
  std::vector<double> z;
  for (int i = -1000; i <= 1000; ++i) z.push_back(i * 0.01);
  return z;
}

const std::vector<double> kGridK = {0.01, 0.1, 1.0, 10.0, 1000.0};

TEST(LossSpecTest, RejectsNonPositiveOrNonFiniteK) {
  EXPECT_THROW(LossSpec(0.0), ContractError);
  EXPECT_THROW(LossSpec(-1.0), ContractError);
  EXPECT_THROW(LossSpec{kInf}, ContractError);
  EXPECT_THROW(LossSpec{kNaN}, ContractError);
  EXPECT_DOUBLE_EQ(LossSpec(0.25).k(), 0.25);
}

// Reference values below were evaluated with mpmath at 50 significant digits.
TEST(RhoTest, ReferenceValues) {
  for (double k : {0.01, 1.0, 7.5}) EXPECT_EQ(Rho(LossSpec(k), 0.0), 0.0);
  EXPECT_NEAR(Rho(LossSpec(2.0), 1.0), 0.8675616609660544, 1e-15);
  EXPECT_NEAR(Rho(LossSpec(1000.0), 3.0), 8.999946000518394, 1e-12);
  EXPECT_LE(std::fabs(Rho(LossSpec(1000.0), 3.0) - 9.0), 27.0 / 1000.0);
}

TEST(RhoTest, NoOverflowForHugeScores) {
  const LossSpec spec(0.01);
  EXPECT_DOUBLE_EQ(Rho(spec, 1e300), 0.01 * 1e300);
  EXPECT_TRUE(std::isfinite(Rho(spec, -1e305)));
  EXPECT_NEAR(Rho(spec, 1000.0), 10.0 - 0.5e-4 * std::log(2.0), 1e-12);
}

TEST(RhoTest, NonFiniteScoreIsDomainError) {
  const LossSpec spec(1.0);
  EXPECT_THROW(Rho(spec, kNaN), DomainError);
  EXPECT_THROW(Psi(spec, kInf), DomainError);
  EXPECT_THROW(RhoSecond(spec, -kInf), DomainError);
}

TEST(PsiTest, ReferenceValues) {
  EXPECT_EQ(Psi(LossSpec(3.0), 0.0), 0.0);
  EXPECT_NEAR(Psi(LossSpec(1.0), 10.0), 1.0, 1e-8);
  EXPECT_NEAR(Psi(LossSpec(2.0), 0.5), 0.9242343145200195, 1e-15);
}

TEST(RhoSecondTest, ReferenceValues) {
  EXPECT_EQ(RhoSecond(LossSpec(0.5), 0.0), 2.0);
  EXPECT_NEAR(RhoSecond(LossSpec(1.0), 100.0), 0.0, 1e-12);
  EXPECT_NEAR(RhoSecond(LossSpec(2.0), 1.0), 0.8399486832280521, 1e-15);
  EXPECT_EQ(RhoSecond(LossSpec(0.01), 1e300), 0.0);
}

TEST(LogCoshTest, AccurateNearZeroAndLarge) {
  // log cosh x = x^2/2 - x^4/12 + x^6/45 - ... for small x.
  EXPECT_NEAR(LogCosh(1e-8), 5e-17, 1e-30);
  EXPECT_NEAR(LogCosh(-1e-3), 0.5e-6 - 1e-12 / 12.0 + 1e-18 / 45.0, 1e-21);
  EXPECT_DOUBLE_EQ(LogCosh(800.0), 800.0 - std::log(2.0));
  EXPECT_NEAR(LogCosh(1.0), 0.4337808304830271, 1e-15);
  EXPECT_NEAR(LogCosh(0.999999), std::log(std::cosh(0.999999)), 1e-15);
}

TEST(SechTest, MatchesDefinition) {
  for (double x : {0.0, 0.3, -2.0, 20.0}) EXPECT_NEAR(Sech(x), 1.0 / std::cosh(x), 1e-15);
  EXPECT_EQ(Sech(1e4), 0.0);
}

TEST(RobHytPropertyTest, RemainderBound) {
  for (double k : kGridK) {
    const LossSpec spec(k);
    for (double z : ZGrid()) {
      const double lhs = std::fabs(Rho(spec, z) - z * z);
      const double rhs = std::fabs(z * z * z) / k;
      EXPECT_LE(lhs, rhs + 4e-16 * z * z) << "k=" << k << " z=" << z;
    }
  }
}

TEST(RobHytPropertyTest, PsiIsDerivativeOfRho) {
  for (double k : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const LossSpec spec(k);
    const double h = 1e-4 * std::min(k, 1.0);
    for (double z : ZGrid()) {
      const double fd = (Rho(spec, z + h) - Rho(spec, z - h)) / (2.0 * h);
      const double exact = Psi(spec, z);
      EXPECT_LE(std::fabs(fd - exact), 1e-6 * std::max(std::fabs(exact), 1e-3 * k))
          << "k=" << k << " z=" << z;
    }
  }
}

TEST(RobHytPropertyTest, RhoSecondIsDerivativeOfPsi) {
  for (double k : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const LossSpec spec(k);
    const double h = 1e-4 * std::min(k, 1.0);
    for (double z : ZGrid()) {
      const double fd = (Psi(spec, z + h) - Psi(spec, z - h)) / (2.0 * h);
      const double exact = RhoSecond(spec, z);
      EXPECT_LE(std::fabs(fd - exact), 1e-6 * std::max(exact, 1e-3)) << "k=" << k << " z=" << z;
    }
  }
}

TEST(RobHytPropertyTest, PsiNeverExceedsK) {
  for (double k : kGridK) {
    const LossSpec spec(k);
    for (double z : ZGrid()) EXPECT_LE(std::fabs(Psi(spec, z)), k);
    for (double z : {1e3, 1e10, 1e300, -1e300}) EXPECT_LE(std::fabs(Psi(spec, z)), k);
  }
}

TEST(RobHytPropertyTest, SymmetryAndConvexity) {
  for (double k : kGridK) {
    const LossSpec spec(k);
    for (double z : ZGrid()) {
      EXPECT_NEAR(Rho(spec, z), Rho(spec, -z), 1e-12);
      EXPECT_NEAR(Psi(spec, z), -Psi(spec, -z), 1e-12);
      if (z != 0.0) EXPECT_GT(Rho(spec, z), 0.0);
      if (std::fabs(z) / k < 100.0) EXPECT_GT(RhoSecond(spec, z), 0.0);
      EXPECT_LE(RhoSecond(spec, z), 2.0);
    }
  }
}

}  // namespace
}  // namespace pmest
