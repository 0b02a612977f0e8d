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

#include "pmest/preprocess.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pmest/errors.h"

namespace pmest {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseNumber(std::string_view field, std::size_t line_no, std::size_t col) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw IoError("csv line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                  ": '" + std::string(field) + "' is not a number");
  }
  return v;
}

std::size_t ColumnIndex(const RawTable& table, const std::string& name) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), name);
  if (it == table.columns.end()) throw ContractError("unknown column '" + name + "'");
  return static_cast<std::size_t>(it - table.columns.begin());
}

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Applies log (optional) then min-max to `values` in place.
ColumnScaling ScaleColumn(const std::string& name, bool take_log, std::vector<double>& values) {
  ColumnScaling sc{name, take_log, 0.0, 0.0};
  if (take_log) {
    for (double& v : values) {
      if (!(v > 0.0)) {
        throw DomainError("column '" + name + "': log transform needs positive values, got " +
                          std::to_string(v));
      }
      v = std::log(v);
    }
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  sc.min = *lo;
  sc.max = *hi;
  if (!(sc.max > sc.min)) {
    throw DomainError("column '" + name + "' is constant; cannot scale to [-1, 1]");
  }
  const double range = sc.max - sc.min;
  for (double& v : values) v = 2.0 * (v - sc.min) / range - 1.0;
  return sc;
}

}  // namespace

RawTable ParseCsvTable(std::string_view text) {
  RawTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitFields(line);
    if (table.columns.empty()) {
      for (auto f : fields) table.columns.emplace_back(f);
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw IoError("csv line " + std::to_string(line_no) + ": expected " +
                    std::to_string(table.columns.size()) + " fields, got " +
                    std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) row.push_back(ParseNumber(fields[c], line_no, c));
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw IoError("csv input has no header row");
  return table;
}

RawTable ReadCsvTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsvTable(buf.str());
}

PreprocessResult Preprocess(const RawTable& table, const PreprocessConfig& config) {
  if (table.rows.empty()) throw ContractError("Preprocess: table has no rows");
  const std::size_t response_col = ColumnIndex(table, config.response);
  for (const auto& name : config.log_columns) ColumnIndex(table, name);
  for (const auto& name : config.drop_columns) ColumnIndex(table, name);

  const std::size_t n = table.rows.size();
  auto column = [&](std::size_t c) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = table.rows[i][c];
    return v;
  };

  PreprocessResult out;
  std::vector<std::vector<double>> covariates;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const std::string& name = table.columns[c];
    if (c == response_col || Contains(config.drop_columns, name)) continue;
    std::vector<double> values = column(c);
    out.covariate_scaling.push_back(ScaleColumn(name, Contains(config.log_columns, name), values));
    out.covariate_names.push_back(name);
    covariates.push_back(std::move(values));
  }

  std::vector<double> y = column(response_col);
  if (config.scale_response) {
    out.response_scaling = ScaleColumn(config.response, Contains(config.log_columns, config.response), y);
  } else {
    out.response_scaling.name = config.response;
  }

  const auto p = static_cast<Eigen::Index>(covariates.size() + 1);
  out.data.x.resize(static_cast<Eigen::Index>(n), p);
  out.data.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out.data.x(r, 0) = 1.0;
    for (std::size_t j = 0; j < covariates.size(); ++j) {
      out.data.x(r, static_cast<Eigen::Index>(j + 1)) = covariates[j][i];
    }
    out.data.y(r) = y[i];
  }
  return out;
}

}  // namespace pmest
