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

#ifndef PMEST_ROBHYT_H_
#define PMEST_ROBHYT_H_

// The RobHyt loss family
//
//   rho_k(z)  = (k^2 / 2) log(cosh(2 z / k))
//   psi_k(z)  = k tanh(2 z / k)          = d rho_k / dz,  |psi_k| <= k
//   rho''_k(z) = 2 sech(2 z / k)^2       = d psi_k / dz,  in (0, 2]
//
// rho_k is smooth and convex, behaves like z^2 near the origin and like
// k |z| in the tails, and tends to z^2 as k -> infinity. All evaluators are
// overflow free for every finite z and k.

namespace pmest {

// Tuning constant of the RobHyt family. Always positive and finite.
class LossSpec {
 public:
  // Throws ContractError unless k > 0 and finite.
  explicit LossSpec(double k);

  double k() const { return k_; }

 private:
  double k_;
};

// log(cosh(x)) without overflow and without cancellation near zero.
double LogCosh(double x);

// sech(x) = 1 / cosh(x), computed as 2 e^{-|x|} / (1 + e^{-2|x|}).
double Sech(double x);

// All three throw DomainError on a non-finite z.
double Rho(const LossSpec& spec, double z);
double Psi(const LossSpec& spec, double z);
double RhoSecond(const LossSpec& spec, double z);

}  // namespace pmest

#endif  // PMEST_ROBHYT_H_
