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

#include "pmest/harness/emit.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "pmest/errors.h"

#ifndef PMEST_VERSION_STRING
#define PMEST_VERSION_STRING "v0.0.0-unknown"
#endif

namespace pmest::harness {
namespace {

using nlohmann::json;

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json JsonDouble(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double DoubleFromJson(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json ManifestJson(const RunManifest& m) {
  return {{"command", m.command},
          {"config_hash", m.config_hash},
          {"master_seed", m.master_seed},
          {"version", m.version}};
}

}  // namespace

OutputFormat ParseOutputFormat(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ContractError("unknown output format '" + std::string(name) + "'");
}

std::string_view LibraryVersion() { return PMEST_VERSION_STRING; }

RunManifest MakeManifest(std::string_view command, const ExperimentConfig& config) {
  return {std::string(command), ConfigHash(config), config.master_seed,
          std::string(LibraryVersion())};
}

RunManifest MakeManifest(std::string_view command, const ConsistencyConfig& config) {
  json j = {{"family", FamilyName(config.family)},
            {"schedule", KScheduleName(config.schedule)},
            {"fixed_k", config.fixed_k},
            {"n_grid", config.n_grid},
            {"replicates", config.replicates},
            {"seed", config.seed},
            {"beta_star", config.linear.beta_star},
            {"noise_sd", config.linear.noise_sd},
            {"solver", {{"tol", config.solver.tol}, {"max_iter", config.solver.max_iter}}}};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return {std::string(command), buf, config.seed, std::string(LibraryVersion())};
}

std::string RecordsToCsv(const std::vector<MetricRecord>& records) {
  std::string out = "estimator,k,metric_value,n_converged,n_total,metric_value_converged\n";
  for (const auto& r : records) {
    out += r.estimator + ',' + FormatDouble(r.k) + ',' + FormatDouble(r.metric_value) + ',' +
           std::to_string(r.n_converged) + ',' + std::to_string(r.n_total) + ',' +
           FormatDouble(r.metric_value_converged) + '\n';
  }
  return out;
}

std::string ManifestToJson(const RunManifest& manifest) {
  return ManifestJson(manifest).dump(2) + "\n";
}

std::string RecordsToJson(const std::vector<MetricRecord>& records, const RunManifest& manifest) {
  json arr = json::array();
  for (const auto& r : records) {
    json o;
    o["estimator"] = r.estimator;
    o["k"] = r.k;
    o["metric_value"] = JsonDouble(r.metric_value);
    o["n_converged"] = r.n_converged;
    o["n_total"] = r.n_total;
    o["metric_value_converged"] = JsonDouble(r.metric_value_converged);
    arr.push_back(std::move(o));
  }
  json doc;
  doc["manifest"] = ManifestJson(manifest);
  doc["records"] = std::move(arr);
  return doc.dump(2) + "\n";
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void EmitResults(const std::vector<MetricRecord>& records, const RunManifest& manifest,
                 const std::filesystem::path& path, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    WriteFile(path, RecordsToJson(records, manifest));
    return;
  }
  WriteFile(path, RecordsToCsv(records));
  std::filesystem::path sidecar = path;
  sidecar += ".manifest.json";
  WriteFile(sidecar, ManifestToJson(manifest));
}

std::vector<MetricRecord> ParseRecordsJson(std::string_view text, RunManifest* manifest) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("results file is not valid JSON: ") + e.what());
  }
  try {
    if (manifest != nullptr) {
      const json& m = doc.at("manifest");
      manifest->command = m.at("command").get<std::string>();
      manifest->config_hash = m.at("config_hash").get<std::string>();
      manifest->master_seed = m.at("master_seed").get<std::uint64_t>();
      manifest->version = m.at("version").get<std::string>();
    }
    std::vector<MetricRecord> records;
    for (const json& o : doc.at("records")) {
      MetricRecord r;
      r.estimator = o.at("estimator").get<std::string>();
      r.k = o.at("k").get<double>();
      r.metric_value = DoubleFromJson(o.at("metric_value"));
      r.n_converged = o.at("n_converged").get<int>();
      r.n_total = o.at("n_total").get<int>();
      r.metric_value_converged = DoubleFromJson(o.at("metric_value_converged"));
      records.push_back(std::move(r));
    }
    return records;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed results file: ") + e.what());
  }
}

std::vector<MetricRecord> ReadRecordsJson(const std::filesystem::path& path,
                                          RunManifest* manifest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseRecordsJson(buf.str(), manifest);
}

std::string ConsistencyToCsv(const ConsistencyTable& table) {
  std::string out = "n,k,median_error,n_converged,replicates\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.n) + ',' + FormatDouble(r.k) + ',' + FormatDouble(r.median_error) +
           ',' + std::to_string(r.n_converged) + ',' + std::to_string(r.replicates) + '\n';
  }
  return out;
}

std::string ConsistencyToJson(const ConsistencyTable& table, const RunManifest& manifest) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n},
                    {"k", r.k},
                    {"median_error", JsonDouble(r.median_error)},
                    {"n_converged", r.n_converged},
                    {"replicates", r.replicates}});
  }
  json doc;
  doc["manifest"] = ManifestJson(manifest);
  doc["rows"] = std::move(rows);
  doc["log_log_slope"] = JsonDouble(table.log_log_slope);
  doc["strictly_decreasing"] = table.strictly_decreasing;
  return doc.dump(2) + "\n";
}

void EmitConsistency(const ConsistencyTable& table, const RunManifest& manifest,
                     const std::filesystem::path& path, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    WriteFile(path, ConsistencyToJson(table, manifest));
    return;
  }
  WriteFile(path, ConsistencyToCsv(table));
  std::filesystem::path sidecar = path;
  sidecar += ".manifest.json";
  WriteFile(sidecar, ManifestToJson(manifest));
}

}  // namespace pmest::harness
