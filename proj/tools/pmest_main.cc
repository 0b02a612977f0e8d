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

// Command line front end for the experiment harness.
//
//   pmest sweep --config cfg.json [--preset logistic|attitude|housing]
//               [--seed N] [--replications H] [--out results.csv]
//               [--format csv|json] [--jobs N]
//   pmest consistency [--config cfg.json] [--family linear|logistic]
//               [--schedule loglog_n|inv_log_n|fixed] [--fixed-k K]
//               [--n-grid 100,1000,10000] [--replicates R] [--seed N]
//               [--out table.csv] [--format csv|json]
//   pmest simulate --model logistic|linear --n N [--seed N] [--out data.csv]

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmest/errors.h"
#include "pmest/harness/config.h"
#include "pmest/harness/consistency.h"
#include "pmest/harness/emit.h"
#include "pmest/harness/simulate.h"
#include "pmest/harness/sweep.h"

namespace {

using namespace pmest::harness;

constexpr const char* kScalingNote =
    "Note: preprocessing rescales every column with its observed min/max. "
    "Those scaling constants are treated as public; they are not privatized.";

std::string DatasetCsv(const pmest::Dataset& data) {
  std::ostringstream out;
  out.precision(17);
  out << "y";
  for (Eigen::Index j = 1; j < data.p(); ++j) out << ",x" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out << data.y(i);
    for (Eigen::Index j = 1; j < data.p(); ++j) out << ',' << data.x(i, j);
    out << '\n';
  }
  return out.str();
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    WriteFile(out_path, text);
  }
}

ConsistencyConfig LoadConsistencyConfig(const std::string& path) {
  ConsistencyConfig c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw pmest::IoError("cannot open config '" + path + "'");
  const nlohmann::json j = nlohmann::json::parse(in);
  if (j.contains("family")) c.family = pmest::ParseFamily(j["family"].get<std::string>());
  if (j.contains("schedule")) c.schedule = ParseKSchedule(j["schedule"].get<std::string>());
  c.fixed_k = j.value("fixed_k", c.fixed_k);
  c.n_grid = j.value("n_grid", c.n_grid);
  c.replicates = j.value("replicates", c.replicates);
  c.seed = j.value("seed", c.seed);
  c.linear.beta_star = j.value("beta_star", c.linear.beta_star);
  c.linear.noise_sd = j.value("noise_sd", c.linear.noise_sd);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pmest: differentially private robust M-estimation experiments"};
  app.footer(kScalingNote);
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "k-grid sweep over H replications");
  std::string config_path, preset, out_path, format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  int jobs = 1;
  sweep->add_option("--config", config_path, "JSON experiment config");
  sweep->add_option("--preset", preset, "built-in experiment: logistic, attitude, housing");
  sweep->add_option("--seed", seed, "master seed (overrides the config)");
  sweep->add_option("--replications", replications, "H (overrides the config)");
  sweep->add_option("--out", out_path, "output path ('-' or empty: stdout)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->footer(kScalingNote);

  // consistency
  auto* cons = app.add_subcommand("consistency", "median error of the robust M-estimator over n");
  std::string cons_config, family, schedule, cons_out, cons_format = "csv";
  std::optional<double> fixed_k;
  std::vector<int> n_grid;
  std::optional<int> replicates;
  std::optional<std::uint64_t> cons_seed;
  cons->add_option("--config", cons_config, "JSON consistency config");
  cons->add_option("--family", family, "linear or logistic")
      ->check(CLI::IsMember({"linear", "logistic"}));
  cons->add_option("--schedule", schedule, "loglog_n, inv_log_n or fixed")
      ->check(CLI::IsMember({"loglog_n", "inv_log_n", "fixed"}));
  cons->add_option("--fixed-k", fixed_k, "k for the fixed schedule");
  cons->add_option("--n-grid", n_grid, "increasing sample sizes")->delimiter(',');
  cons->add_option("--replicates", replicates, "replicates per n");
  cons->add_option("--seed", cons_seed, "seed");
  cons->add_option("--out", cons_out, "output path ('-' or empty: stdout)");
  cons->add_option("--format", cons_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "write one simulated dataset as CSV");
  std::string model = "logistic", sim_out;
  int n = 100;
  std::uint64_t sim_seed = 1;
  std::vector<double> beta_star;
  double noise_sd = 0.2;
  sim->add_option("--model", model, "logistic or linear")
      ->check(CLI::IsMember({"linear", "logistic"}));
  sim->add_option("--n", n, "rows")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "seed");
  sim->add_option("--beta-star", beta_star, "linear coefficients, intercept first")
      ->delimiter(',');
  sim->add_option("--noise-sd", noise_sd, "linear noise standard deviation");
  sim->add_option("--out", sim_out, "output path ('-' or empty: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      ExperimentConfig config;
      if (!config_path.empty()) {
        config = LoadExperimentConfig(config_path);
      } else {
        config = PresetConfig(preset.empty() ? "logistic" : preset);
      }
      if (seed) config.master_seed = *seed;
      if (replications) config.replications = *replications;
      ValidateConfig(config);
      const auto records = RunSweep(config, jobs);
      const RunManifest manifest = MakeManifest("sweep", config);
      const OutputFormat fmt = ParseOutputFormat(format);
      if (out_path.empty() || out_path == "-") {
        std::cout << (fmt == OutputFormat::kJson ? RecordsToJson(records, manifest)
                                                 : RecordsToCsv(records));
      } else {
        EmitResults(records, manifest, out_path, fmt);
      }
    } else if (cons->parsed()) {
      ConsistencyConfig config = LoadConsistencyConfig(cons_config);
      if (!family.empty()) config.family = pmest::ParseFamily(family);
      if (!schedule.empty()) config.schedule = ParseKSchedule(schedule);
      if (fixed_k) config.fixed_k = *fixed_k;
      if (!n_grid.empty()) config.n_grid = n_grid;
      if (replicates) config.replicates = *replicates;
      if (cons_seed) config.seed = *cons_seed;
      const ConsistencyTable table = ConsistencyStudy(config);
      const RunManifest manifest = MakeManifest("consistency", config);
      const OutputFormat fmt = ParseOutputFormat(cons_format);
      if (cons_out.empty() || cons_out == "-") {
        std::cout << (fmt == OutputFormat::kJson ? ConsistencyToJson(table, manifest)
                                                 : ConsistencyToCsv(table));
      } else {
        EmitConsistency(table, manifest, cons_out, fmt);
      }
    } else if (sim->parsed()) {
      SimulatedData data;
      if (model == "logistic") {
        data = SimulateLogistic(n, sim_seed);
      } else {
        pmest::harness::LinearSimulationConfig lin;
        lin.n = n;
        if (!beta_star.empty()) lin.beta_star = beta_star;
        lin.noise_sd = noise_sd;
        data = SimulateLinear(lin, sim_seed);
      }
      Emit(DatasetCsv(data.data), sim_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "pmest: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
