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

#ifndef PMEST_ERRORS_H_
#define PMEST_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmest {

// A caller violated a documented precondition (bad dimension, k <= 0,
// unsupported family, q outside (0, 1), ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric argument lies outside the domain of a function (e.g. a
// non-finite score passed to the loss kernel).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A dataset row lies outside the bounded domain the privacy calibration
// assumes. Carries the zero-based index of the first offending row.
class DataDomainError : public DomainError {
 public:
  DataDomainError(std::size_t row, const std::string& what)
      : DomainError(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Linear systems that have no unique solution (singular X^T X).
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input tables or configs, unwritable output paths.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmest

#endif  // PMEST_ERRORS_H_
