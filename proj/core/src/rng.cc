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

#include "pmest/rng.h"

namespace pmest {

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

Rng Rng::Derive(std::uint64_t stream) const {
  return Rng(MixSeed(seed_ ^ MixSeed(stream + 0x632be59bd9b4e019ULL)));
}

double Rng::Uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::Normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double Rng::Exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

double Rng::Gamma(double shape, double scale) {
  return std::gamma_distribution<double>(shape, scale)(engine_);
}

bool Rng::Bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

std::uint64_t Rng::Index(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

}  // namespace pmest
