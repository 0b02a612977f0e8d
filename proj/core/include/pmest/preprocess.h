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

#ifndef PMEST_PREPROCESS_H_
#define PMEST_PREPROCESS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pmest/score_model.h"

namespace pmest {

// A numeric table with a header row.
struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Comma-separated text with a header row. Surrounding quotes on fields are
// stripped. Throws IoError on ragged rows or non-numeric cells.
RawTable ParseCsvTable(std::string_view text);
RawTable ReadCsvTable(const std::filesystem::path& path);

struct PreprocessConfig {
  std::string response;                  // column used as y
  std::vector<std::string> log_columns;  // natural log applied before scaling
  std::vector<std::string> drop_columns;
  // Binary (logistic) responses must be left as 0/1.
  bool scale_response = true;
};

// Constants of the affine map v -> 2 (v - min) / (max - min) - 1, applied
// after the optional log. These are treated as public knowledge.
struct ColumnScaling {
  std::string name;
  bool log = false;
  double min = 0.0;
  double max = 0.0;
};

struct PreprocessResult {
  Dataset data;                             // x(:, 0) is the intercept
  std::vector<std::string> covariate_names; // names of x(:, 1..p-1)
  std::vector<ColumnScaling> covariate_scaling;
  ColumnScaling response_scaling;  // min = max = 0 when not scaled
};

// Log-transforms the configured columns, maps every remaining numeric
// column onto [-1, 1] by its observed min/max, and prepends the intercept.
// Throws ContractError for unknown column names or an empty table and
// DomainError when a log column holds a non-positive value or any column is
// constant; both messages name the column.
PreprocessResult Preprocess(const RawTable& table, const PreprocessConfig& config);

}  // namespace pmest

#endif  // PMEST_PREPROCESS_H_
