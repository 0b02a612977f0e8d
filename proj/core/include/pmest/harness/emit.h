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

#ifndef PMEST_HARNESS_EMIT_H_
#define PMEST_HARNESS_EMIT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pmest/harness/consistency.h"
#include "pmest/harness/sweep.h"

namespace pmest::harness {

enum class OutputFormat { kCsv, kJson };
OutputFormat ParseOutputFormat(std::string_view name);  // csv | json

struct RunManifest {
  std::string command;  // sweep | consistency
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::string version;  // git-describe style, e.g. v0.1.0
};

// Version string compiled into the library.
std::string_view LibraryVersion();

RunManifest MakeManifest(std::string_view command, const ExperimentConfig& config);
RunManifest MakeManifest(std::string_view command, const ConsistencyConfig& config);

// Columns: estimator,k,metric_value,n_converged,n_total,metric_value_converged.
// Doubles use the shortest representation that round-trips; NaN is "nan".
std::string RecordsToCsv(const std::vector<MetricRecord>& records);
// {"manifest": {...}, "records": [...]}; NaN is written as null.
std::string RecordsToJson(const std::vector<MetricRecord>& records, const RunManifest& manifest);
std::string ManifestToJson(const RunManifest& manifest);

// Writes the records to `path`. For CSV the manifest goes to a sibling
// file `<path>.manifest.json`; for JSON it is embedded. Throws IoError if
// a file cannot be written.
void EmitResults(const std::vector<MetricRecord>& records, const RunManifest& manifest,
                 const std::filesystem::path& path, OutputFormat format);

// Inverse of the JSON emitter.
std::vector<MetricRecord> ParseRecordsJson(std::string_view text, RunManifest* manifest = nullptr);
std::vector<MetricRecord> ReadRecordsJson(const std::filesystem::path& path,
                                          RunManifest* manifest = nullptr);

// Columns: n,k,median_error,n_converged,replicates.
std::string ConsistencyToCsv(const ConsistencyTable& table);
std::string ConsistencyToJson(const ConsistencyTable& table, const RunManifest& manifest);
void EmitConsistency(const ConsistencyTable& table, const RunManifest& manifest,
                     const std::filesystem::path& path, OutputFormat format);

// Writes `contents` to `path` byte for byte.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace pmest::harness

#endif  // PMEST_HARNESS_EMIT_H_
