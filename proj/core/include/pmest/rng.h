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

#ifndef PMEST_RNG_H_
#define PMEST_RNG_H_

#include <cstdint>
#include <random>

namespace pmest {

// SplitMix64 finalizer; used to derive well separated child seeds.
std::uint64_t MixSeed(std::uint64_t x);

// Seedable, splittable random source. A handle is not thread safe; give
// every worker its own stream via Derive().
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Independent child stream identified by `stream`. Deterministic in
  // (seed(), stream) and unaffected by draws already made from *this.
  Rng Derive(std::uint64_t stream) const;

  double Uniform(double lo, double hi);
  double Normal();
  double Exponential();
  // Gamma with the given shape and scale (mean = shape * scale).
  double Gamma(double shape, double scale);
  bool Bernoulli(double p);
  // Uniform on {0, ..., n - 1}.
  std::uint64_t Index(std::uint64_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pmest

#endif  // PMEST_RNG_H_
