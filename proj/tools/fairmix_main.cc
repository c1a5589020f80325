// Copyright 2026 The fairmix Authors.
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

// fairmix command-line front end.
//
// Exit codes: 0 success, 1 input or contract error, 2 infeasible,
// 3 counterexample not found (or a failed self-test / verification, which
// also returns 1).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairmix/classifier.h"
#include "fairmix/dataset.h"
#include "fairmix/ensemble.h"
#include "fairmix/error.h"
#include "fairmix/json_writer.h"
#include "fairmix/metrics.h"
#include "fairmix/optimizer.h"
#include "fairmix/report.h"
#include "fairmix/scenarios.h"

namespace fs = std::filesystem;
using namespace fairmix;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNotFound = 3;

struct GlobalOptions {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

// Writes to --out when given, stdout otherwise.
void Emit(const GlobalOptions& options, const std::string& text) {
  if (options.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(options.out);
  if (!file) throw Error(ErrorCode::kParse, "cannot write " + options.out);
  file << text;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kParse, "cannot write " + path.string());
  file << text;
}

std::string Fixed(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", *v == 0.0 ? 0.0 : *v);
  return buf;
}

void RequireFormat(const GlobalOptions& options, bool csv_supported) {
  if (options.format == "csv" && !csv_supported) {
    throw Error(ErrorCode::kContract,
                "--format csv is not available for this command");
  }
}

// Dataset and members either from files or from a named scenario.
struct Inputs {
  std::optional<Dataset> dataset;
  std::vector<Classifier> members;
};

Inputs LoadInputs(const std::string& dataset_path,
                  const std::string& predictions_path,
                  const std::string& scenario) {
  Inputs inputs;
  if (!scenario.empty()) {
    if (!dataset_path.empty() || !predictions_path.empty()) {
      throw Error(ErrorCode::kContract,
                  "give either --scenario or dataset and prediction files");
    }
    auto s = ScenarioByName(scenario);
    if (!s) throw Error(ErrorCode::kContract, "unknown scenario " + scenario);
    inputs.dataset.emplace(s->dataset);
    inputs.members = s->members;
    return inputs;
  }
  if (dataset_path.empty() || predictions_path.empty()) {
    throw Error(ErrorCode::kContract,
                "dataset and prediction files are required");
  }
  inputs.dataset.emplace(LoadDataset(dataset_path));
  for (auto& table : LoadPredictionMatrix(predictions_path, *inputs.dataset)) {
    inputs.members.emplace_back(std::move(table));
  }
  return inputs;
}

std::string MetricsCsv(std::span<const FairnessReport> reports) {
  std::ostringstream out;
  out << "subject,kind,value_z0,value_z1,gap,pass\n";
  for (const FairnessReport& r : reports) {
    for (const GroupMetric& m : r.metrics) {
      out << r.subject << ',' << MetricName(m.kind) << ','
          << Fixed(m.value_z0) << ',' << Fixed(m.value_z1) << ','
          << Fixed(m.gap) << ','
          << (m.pass ? (*m.pass ? "true" : "false") : "") << '\n';
    }
  }
  return out.str();
}

int RunAudit(const GlobalOptions& options, const std::string& dataset_path,
             const std::string& predictions_path,
             const std::string& weights_path) {
  RequireFormat(options, true);
  const Inputs inputs = LoadInputs(dataset_path, predictions_path, "");
  const Dataset& dataset = *inputs.dataset;
  const auto pairs = BuildCounterfactualPairs(dataset);
  std::vector<FairnessReport> reports;
  nlohmann::json doc;
  if (!weights_path.empty()) {
    const Ensemble ensemble(inputs.members, LoadWeights(weights_path));
    reports.push_back(AuditEnsemble(ensemble, dataset, pairs,
                                    options.tolerance));
    doc = ToJson(reports.front());
  } else {
    doc["classifiers"] = nlohmann::json::array();
    for (std::size_t j = 0; j < inputs.members.size(); ++j) {
      reports.push_back(AuditClassifier(inputs.members[j], dataset, pairs,
                                        options.tolerance,
                                        "clf_" + std::to_string(j + 1)));
      doc["classifiers"].push_back(ToJson(reports.back()));
    }
  }
  Emit(options, options.format == "csv" ? MetricsCsv(reports) : DumpJson(doc));
  return kExitOk;
}

struct MixFlags {
  std::string dataset;
  std::string predictions;
  std::string scenario;
  std::vector<std::string> metrics;
  std::uint32_t oracle_resolution = 0;
  bool verify = false;
  std::string objective;
};

int RunMix(const GlobalOptions& options, const MixFlags& flags,
           MixtureObjective default_objective) {
  RequireFormat(options, true);
  MixtureObjective objective = default_objective;
  if (flags.objective == "max-accuracy") {
    objective = MixtureObjective::kMaxAccuracy;
  } else if (flags.objective == "feasibility") {
    objective = MixtureObjective::kFeasibilityOnly;
  } else if (!flags.objective.empty()) {
    throw Error(ErrorCode::kContract, "unknown objective " + flags.objective);
  }
  std::vector<MetricKind> kinds;
  for (const std::string& name : flags.metrics) {
    const auto kind = ParseMetricKind(name);
    if (!kind) throw Error(ErrorCode::kContract, "unknown metric " + name);
    kinds.push_back(*kind);
  }
  if (kinds.empty()) kinds.push_back(MetricKind::kAcceptanceRate);

  const Inputs inputs =
      LoadInputs(flags.dataset, flags.predictions, flags.scenario);
  const Dataset& dataset = *inputs.dataset;
  const MixtureSolution solution = SolveFairMixture(
      inputs.members, dataset, kinds, options.tolerance, objective);

  nlohmann::json doc = ToJson(solution);
  doc["objective"] = objective == MixtureObjective::kMaxAccuracy
                         ? "max-accuracy"
                         : "feasibility";
  nlohmann::json constrained = nlohmann::json::array();
  for (MetricKind k : kinds) constrained.push_back(std::string(MetricName(k)));
  doc["constrained"] = constrained;

  bool verified = true;
  const std::uint32_t resolution =
      flags.oracle_resolution > 0 ? flags.oracle_resolution
                                  : (flags.verify ? 200U : 0U);
  if (resolution > 0) {
    const OracleResult oracle = GridOracle(inputs.members, dataset, kinds,
                                           options.tolerance, resolution);
    doc["oracle"] = ToJson(oracle);
    if (flags.verify && solution.status == LpStatus::kOptimal &&
        objective == MixtureObjective::kMaxAccuracy && oracle.weights) {
      verified = solution.accuracy + kSolutionSlack >= oracle.accuracy;
      doc["oracle"]["lp_dominates"] = verified;
    }
  }

  if (options.format == "csv") {
    std::ostringstream out;
    out << "member,weight\n";
    for (std::size_t j = 0; j < solution.weights.size(); ++j) {
      out << j + 1 << ',' << Fixed(solution.weights[j]) << '\n';
    }
    Emit(options, out.str());
  } else {
    Emit(options, DumpJson(doc));
  }
  if (solution.status != LpStatus::kOptimal) return kExitInfeasible;
  return verified ? kExitOk : kExitError;
}

int RunSample(const GlobalOptions& options, const std::string& dataset_path,
              const std::string& predictions_path,
              const std::string& weights_path, std::uint64_t draws,
              bool per_instance) {
  RequireFormat(options, true);
  const Inputs inputs = LoadInputs(dataset_path, predictions_path, "");
  const Ensemble ensemble(inputs.members, LoadWeights(weights_path));
  const SampleResult result =
      Sample(ensemble, *inputs.dataset, draws, options.seed,
             per_instance ? SamplingMode::kPerInstance : SamplingMode::kPerDraw);
  if (options.format == "csv") {
    std::ostringstream out;
    WriteSampleCsv(result, out);
    Emit(options, out.str());
    return kExitOk;
  }
  nlohmann::json doc = ToJson(result);
  for (int z = 0; z < kGroupCount; ++z) {
    doc["z" + std::to_string(z)]["analytic_rate"] = OptionalNumber(
        EnsembleGroupRate(ensemble, MetricKind::kAcceptanceRate,
                          *inputs.dataset, z));
  }
  Emit(options, DumpJson(doc));
  return kExitOk;
}

// Writes dataset.csv, predictions.csv and weights.json into `dir`.
void ExportBundle(const fs::path& dir, const Dataset& dataset,
                  std::span<const Classifier> members,
                  std::span<const double> weights) {
  fs::create_directories(dir);
  SaveDataset(dataset, dir / "dataset.csv");
  std::ostringstream predictions;
  WritePredictionMatrixCsv(members, dataset, predictions);
  WriteFile(dir / "predictions.csv", predictions.str());
  std::ostringstream w;
  WriteWeightsJson(weights, w);
  WriteFile(dir / "weights.json", w.str());
}

int RunFigure(const GlobalOptions& options, int number) {
  RequireFormat(options, false);
  const auto scenario = ScenarioByNumber(number);
  if (!scenario) throw Error(ErrorCode::kContract, "figure must be 1..4");
  const std::vector<ScenarioCheck> checks = SelfTest(*scenario);
  bool pass = true;
  for (const ScenarioCheck& c : checks) pass = pass && c.pass;

  nlohmann::json doc;
  doc["scenario"] = scenario->name;
  doc["description"] = scenario->description;
  doc["self_test"] = ToJson(checks);
  doc["pass"] = pass;
  if (!options.out.empty()) {
    const fs::path dir(options.out);
    ExportBundle(dir, scenario->dataset, scenario->members,
                 scenario->prescribed_weights);
    WriteFile(dir / "expectations.json", DumpJson(ExpectationsJson(*scenario)));
    WriteFile(dir / "selftest.json", DumpJson(doc));
  }
  std::cout << DumpJson(doc);
  return pass ? kExitOk : kExitError;
}

int RunCounterexample(const GlobalOptions& options,
                      std::uint64_t max_trials) {
  RequireFormat(options, false);
  const auto witness = PpvCounterexampleSearch(options.seed, max_trials);
  if (!witness) {
    nlohmann::json doc;
    doc["status"] = "NotFound";
    doc["seed"] = options.seed;
    doc["max_trials"] = max_trials;
    std::cout << DumpJson(doc);
    return kExitNotFound;
  }
  std::vector<Classifier> members(witness->members.begin(),
                                  witness->members.end());
  const Ensemble ensemble(members, witness->weights);
  const auto pairs = BuildCounterfactualPairs(witness->dataset);
  nlohmann::json doc = ToJson(*witness);
  doc["status"] = "Found";
  doc["verification"] = ToJson(
      AuditEnsemble(ensemble, witness->dataset, pairs, options.tolerance));
  if (!options.out.empty()) {
    const fs::path dir(options.out);
    ExportBundle(dir, witness->dataset, members, witness->weights);
    WriteFile(dir / "witness.json", DumpJson(doc));
  }
  std::cout << DumpJson(doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairmix: fairness auditing and optimization of random "
               "classifier ensembles"};
  app.require_subcommand(1);
  GlobalOptions options;
  app.add_option("--tol", options.tolerance,
                 "Fairness tolerance on |gap| (default 1e-9; 'inf' drops "
                 "constraints)");
  app.add_option("--seed", options.seed, "Random seed (default 0)");
  app.add_option("--out", options.out,
                 "Output file (directory for figure/counterexample)");
  app.add_option("--format", options.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string dataset, predictions, weights;
  auto* audit = app.add_subcommand("audit", "Fairness report for classifiers "
                                            "or a weighted ensemble");
  audit->fallthrough();
  audit->add_option("dataset", dataset, "Dataset CSV")->required();
  audit->add_option("predictions", predictions, "Prediction-matrix CSV")
      ->required();
  audit->add_option("weights", weights, "Weights JSON (ensemble report)");

  MixFlags mix_flags;
  const auto add_mix_options = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("dataset", mix_flags.dataset, "Dataset CSV");
    cmd->add_option("predictions", mix_flags.predictions,
                    "Prediction-matrix CSV");
    cmd->add_option("--scenario", mix_flags.scenario,
                    "Use a built-in scenario (fig1..fig4) instead of files");
    cmd->add_option("--metric", mix_flags.metrics,
                    "Constrained metric: AcceptanceRate, TPR or TNR "
                    "(repeatable; default AcceptanceRate)");
    cmd->add_option("--objective", mix_flags.objective,
                    "max-accuracy or feasibility");
    cmd->add_option("--oracle-resolution", mix_flags.oracle_resolution,
                    "Also run the grid oracle at this lattice resolution");
    cmd->add_flag("--verify", mix_flags.verify,
                  "Check the LP optimum against the grid oracle");
  };
  auto* optimize = app.add_subcommand(
      "optimize", "Most accurate mixture meeting the fairness constraints");
  add_mix_options(optimize);
  auto* mix = app.add_subcommand(
      "mix", "Any mixture meeting the fairness constraints");
  add_mix_options(mix);

  std::uint64_t draws = 0;
  bool per_instance = false;
  auto* sample = app.add_subcommand("sample", "Seeded Monte Carlo run");
  sample->fallthrough();
  sample->add_option("dataset", dataset, "Dataset CSV")->required();
  sample->add_option("predictions", predictions, "Prediction-matrix CSV")
      ->required();
  sample->add_option("weights", weights, "Weights JSON")->required();
  sample->add_option("--n", draws, "Number of draws")
      ->required()
      ->check(CLI::PositiveNumber);
  sample->add_flag("--per-instance", per_instance,
                   "Draw a member per instance instead of per draw");

  int figure_number = 0;
  auto* figure = app.add_subcommand(
      "figure", "Export a built-in scenario and run its self-test");
  figure->fallthrough();
  figure->add_option("number", figure_number, "1, 2, 3 or 4")
      ->required()
      ->check(CLI::Range(1, 4));

  std::uint64_t max_trials = 100000;
  auto* counterexample = app.add_subcommand(
      "counterexample", "Search for PPV-fair members with an unfair mixture");
  counterexample->fallthrough();
  counterexample->add_option("--max-trials", max_trials,
                             "Trial budget (default 100000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (options.tolerance < 0.0 || std::isnan(options.tolerance)) {
      throw Error(ErrorCode::kContract, "--tol must be >= 0");
    }
    if (*audit) return RunAudit(options, dataset, predictions, weights);
    if (*optimize) {
      return RunMix(options, mix_flags, MixtureObjective::kMaxAccuracy);
    }
    if (*mix) {
      return RunMix(options, mix_flags, MixtureObjective::kFeasibilityOnly);
    }
    if (*sample) {
      return RunSample(options, dataset, predictions, weights, draws,
                       per_instance);
    }
    if (*figure) return RunFigure(options, figure_number);
    if (*counterexample) return RunCounterexample(options, max_trials);
  } catch (const Error& e) {
    std::cerr << "fairmix: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "fairmix: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
