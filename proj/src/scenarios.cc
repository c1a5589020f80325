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

#include "fairmix/scenarios.h"

#include <cctype>
#include <cmath>
#include <string>

#include "fairmix/distributional.h"
#include "fairmix/ensemble.h"
#include "fairmix/metrics.h"
#include "fairmix/optimizer.h"

namespace fairmix {
namespace {

constexpr int kMen = 0;
constexpr int kWomen = 1;

Instance Make(std::vector<double> features, bool positive, int z) {
  return {std::move(features), positive ? Label::kPositive : Label::kNegative,
          z};
}

LinearClassifier Linear(std::vector<double> weights, double sensitive_weight,
                        double bias) {
  return {std::move(weights), sensitive_weight, bias};
}

std::string Key(const std::string& prefix, MetricKind kind,
                const std::string& field) {
  return prefix + "." + std::string(MetricName(kind)) + "." + field;
}

void PutRates(std::map<std::string, double>& out, const std::string& prefix,
              std::span<const Label> predictions, const Dataset& dataset) {
  for (MetricKind kind : kAllMetricKinds) {
    const auto v0 = GroupRate(kind, predictions, dataset, 0);
    const auto v1 = GroupRate(kind, predictions, dataset, 1);
    if (v0) out[Key(prefix, kind, "z0")] = *v0;
    if (v1) out[Key(prefix, kind, "z1")] = *v1;
    if (v0 && v1) out[Key(prefix, kind, "gap")] = *v0 - *v1;
  }
}

void PutDispersion(std::map<std::string, double>& out,
                   const std::string& prefix, const DispersionReport& report) {
  for (int z = 0; z < kGroupCount; ++z) {
    const GroupDispersion& g = report.groups[z];
    const std::string p = prefix + ".z" + std::to_string(z) + ".";
    if (g.mean_q) out[p + "mean"] = *g.mean_q;
    if (g.variance_q) out[p + "variance"] = *g.variance_q;
    if (g.gini_q) out[p + "gini"] = *g.gini_q;
    if (g.determinism_index) out[p + "determinism"] = *g.determinism_index;
  }
}

}  // namespace

Scenario Figure1() {
  std::vector<Instance> instances;
  for (int z : {kMen, kWomen}) {
    for (int k = 0; k < 4; ++k) instances.push_back(Make({0.0}, k < 2, z));
  }
  Scenario s{"fig1",
             "Equality of treatment: two gender-only classifiers, uniform mix.",
             Dataset(std::move(instances)),
             {Linear({0.0}, 1.0, -0.5), Linear({0.0}, -1.0, 0.5)},
             {0.5, 0.5},
             {},
             {}};
  s.expectations = {
      {"counterfactual_pairs", 16},
      {"member1.treatment_violation_share", 1},
      {"member2.treatment_violation_share", 1},
      {"member1.flip_violation_share", 1},
      {"member2.flip_violation_share", 1},
      {"ensemble.treatment_violation_share", 0},
      {"member1.AcceptanceRate.z0", 0},
      {"member1.AcceptanceRate.z1", 1},
      {"member2.AcceptanceRate.z0", 1},
      {"member2.AcceptanceRate.z1", 0},
      {"ensemble.q.min", 0.5},
      {"ensemble.q.max", 0.5},
      {"ensemble.AcceptanceRate.gap", 0},
      {"feasibility.weight1", 0.5},
      {"feasibility.weight2", 0.5},
  };
  return s;
}

Scenario Figure2() {
  // Rows of three points; f_1 values are staggered so that a vertical line
  // at f_1 = 0.7 cuts exactly two points per group.
  const double women_f2[3] = {0.25, 0.5, 0.75};
  const double women_f1[3][3] = {
      {-0.6, 0.2, 0.8}, {-0.4, 0.3, 0.9}, {-0.8, -0.2, 0.4}};
  const double men_f2[3] = {-0.25, -0.5, -0.75};
  const double men_f1[3][3] = {
      {-0.7, 0.1, 0.75}, {-0.3, 0.5, 0.85}, {-0.5, 0.35, 0.6}};
  // Ground truth by quadrant: positive where f_1 and f_2 share a sign.
  std::vector<Instance> instances;
  for (int row = 0; row < 3; ++row) {
    for (double f1 : women_f1[row]) {
      instances.push_back(Make({f1, women_f2[row]}, f1 > 0.0, kWomen));
    }
  }
  for (int row = 0; row < 3; ++row) {
    for (double f1 : men_f1[row]) {
      instances.push_back(Make({f1, men_f2[row]}, f1 < 0.0, kMen));
    }
  }
  Scenario s{"fig2",
             "Equality of impact from two unfair classifiers mixed 1/3 : 2/3.",
             Dataset(std::move(instances)),
             {Linear({0.0, 1.0}, 0.0, -0.375),    // f_2 >= 0.375
              Linear({0.0, -1.0}, 0.0, -0.625)},  // f_2 <= -0.625
             {1.0 / 3.0, 2.0 / 3.0},
             {Linear({1.0, 0.0}, 0.0, -0.7)},  // f_1 >= 0.7
             {}};
  s.expectations = {
      {"member1.AcceptanceRate.z0", 0},
      {"member1.AcceptanceRate.z1", 2.0 / 3.0},
      {"member1.AcceptanceRate.gap", -2.0 / 3.0},
      {"member2.AcceptanceRate.z0", 1.0 / 3.0},
      {"member2.AcceptanceRate.z1", 0},
      {"member2.AcceptanceRate.gap", 1.0 / 3.0},
      {"reference1.AcceptanceRate.z0", 2.0 / 9.0},
      {"reference1.AcceptanceRate.z1", 2.0 / 9.0},
      {"reference1.AcceptanceRate.gap", 0},
      {"ensemble.AcceptanceRate.z0", 2.0 / 9.0},
      {"ensemble.AcceptanceRate.z1", 2.0 / 9.0},
      {"ensemble.AcceptanceRate.gap", 0},
      {"feasibility.weight1", 1.0 / 3.0},
      {"feasibility.weight2", 2.0 / 3.0},
  };
  return s;
}

Scenario Figure3() {
  std::vector<Instance> instances;
  for (int k = 0; k < 4; ++k) instances.push_back(Make({1.0}, true, kMen));
  for (int k = 0; k < 4; ++k) instances.push_back(Make({0.0}, false, kMen));
  for (int k = 0; k < 4; ++k) instances.push_back(Make({0.0}, true, kWomen));
  for (int k = 0; k < 4; ++k) instances.push_back(Make({1.0}, false, kWomen));
  Scenario s{"fig3",
             "Accuracy/fairness trade-off: 0.75 ensemble vs 0.5 best single.",
             Dataset(std::move(instances)),
             // f_1 - z - 0.5 >= 0: men with f_1 = 1 only.
             {Linear({1.0}, -1.0, -0.5),
              // -f_1 + z - 0.5 >= 0: women with f_1 = 0 only.
              Linear({-1.0}, 1.0, -0.5)},
             {0.5, 0.5},
             {},
             {}};
  s.expectations = {
      {"member1.accuracy", 0.75},
      {"member2.accuracy", 0.75},
      {"member1.AcceptanceRate.z0", 0.5},
      {"member1.AcceptanceRate.z1", 0},
      {"member2.AcceptanceRate.z0", 0},
      {"member2.AcceptanceRate.z1", 0.5},
      {"ensemble.accuracy", 0.75},
      {"ensemble.AcceptanceRate.z0", 0.25},
      {"ensemble.AcceptanceRate.z1", 0.25},
      {"ensemble.AcceptanceRate.gap", 0},
      {"best_fair_threshold.f1.accuracy", 0.5},
      {"optimum.accuracy", 0.75},
      {"optimum.weight1", 0.5},
      {"optimum.weight2", 0.5},
  };
  return s;
}

Scenario Figure4() {
  std::vector<Instance> instances;
  // Men: top-right and bottom-left quadrants.
  instances.push_back(Make({0.5, 0.5}, true, kMen));
  instances.push_back(Make({0.75, 0.25}, true, kMen));
  instances.push_back(Make({-0.5, -0.5}, false, kMen));
  instances.push_back(Make({-0.25, -0.75}, false, kMen));
  // Women: top-left and bottom-right quadrants.
  instances.push_back(Make({-0.5, 0.5}, true, kWomen));
  instances.push_back(Make({-0.25, 0.75}, true, kWomen));
  instances.push_back(Make({0.5, -0.5}, false, kWomen));
  instances.push_back(Make({0.75, -0.25}, false, kWomen));
  Scenario s{"fig4",
             "Distributional fairness: deterministic men, randomized women.",
             Dataset(std::move(instances)),
             {Linear({1.0, 0.0}, 0.0, 0.0), Linear({0.0, 1.0}, 0.0, 0.0)},
             {0.5, 0.5},
             {},
             {}};
  s.expectations = {
      {"member1.AcceptanceRate.z0", 0.5},
      {"member1.AcceptanceRate.z1", 0.5},
      {"member1.AcceptanceRate.gap", 0},
      {"member2.AcceptanceRate.z0", 0.5},
      {"member2.AcceptanceRate.z1", 0.5},
      {"member2.AcceptanceRate.gap", 0},
      {"ensemble.AcceptanceRate.z0", 0.5},
      {"ensemble.AcceptanceRate.z1", 0.5},
      {"ensemble.AcceptanceRate.gap", 0},
      {"ensemble.q.z1.min", 0.5},
      {"ensemble.q.z1.max", 0.5},
      {"ensemble.dispersion.z1.mean", 0.5},
      {"ensemble.dispersion.z1.variance", 0},
      {"ensemble.dispersion.z1.gini", 0},
      {"ensemble.dispersion.z1.determinism", 0},
      {"ensemble.dispersion.z0.mean", 0.5},
      {"ensemble.dispersion.z0.variance", 0.25},
      {"ensemble.dispersion.z0.gini", 0.5},
      {"ensemble.dispersion.z0.determinism", 1},
      {"dispersion_delta.vs_member1.z1.variance", -0.25},
  };
  return s;
}

std::optional<Scenario> ScenarioByNumber(int number) {
  switch (number) {
    case 1:
      return Figure1();
    case 2:
      return Figure2();
    case 3:
      return Figure3();
    case 4:
      return Figure4();
    default:
      return std::nullopt;
  }
}

std::optional<Scenario> ScenarioByName(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  for (const char* prefix : {"figure", "fig"}) {
    if (lower.rfind(prefix, 0) == 0) {
      lower.erase(0, std::string_view(prefix).size());
      break;
    }
  }
  if (lower.size() != 1 || lower[0] < '1' || lower[0] > '4') {
    return std::nullopt;
  }
  return ScenarioByNumber(lower[0] - '0');
}

std::map<std::string, double> EvaluateScenario(const Scenario& scenario) {
  const Dataset& data = scenario.dataset;
  std::map<std::string, double> out;
  const auto pairs = BuildCounterfactualPairs(data);
  out["counterfactual_pairs"] = static_cast<double>(pairs.size());

  const auto put_classifier = [&](const std::string& prefix,
                                  const Classifier& c) {
    const std::vector<Label> labels = PredictAll(c, data);
    out[prefix + ".accuracy"] = Accuracy(labels, data);
    PutRates(out, prefix, labels, data);
    if (!pairs.empty()) {
      out[prefix + ".treatment_violation_share"] =
          static_cast<double>(TreatmentViolations(c, data, pairs).size()) /
          static_cast<double>(pairs.size());
    }
    if (std::holds_alternative<LinearClassifier>(c)) {
      out[prefix + ".flip_violation_share"] =
          static_cast<double>(FlipTestViolations(c, data).size()) /
          static_cast<double>(data.size());
    }
  };
  for (std::size_t j = 0; j < scenario.members.size(); ++j) {
    put_classifier("member" + std::to_string(j + 1), scenario.members[j]);
  }
  for (std::size_t k = 0; k < scenario.references.size(); ++k) {
    put_classifier("reference" + std::to_string(k + 1),
                   scenario.references[k]);
  }

  const Ensemble ensemble(scenario.members, scenario.prescribed_weights);
  const EnsembleEvaluation eval(ensemble, data);
  out["ensemble.accuracy"] = eval.Accuracy();
  for (MetricKind kind : kAllMetricKinds) {
    const auto v0 = eval.GroupRate(kind, 0);
    const auto v1 = eval.GroupRate(kind, 1);
    if (v0) out[Key("ensemble", kind, "z0")] = *v0;
    if (v1) out[Key("ensemble", kind, "z1")] = *v1;
    if (v0 && v1) out[Key("ensemble", kind, "gap")] = *v0 - *v1;
  }
  const BenefitProfile q = eval.Profile();
  out["ensemble.q.min"] = *std::min_element(q.begin(), q.end());
  out["ensemble.q.max"] = *std::max_element(q.begin(), q.end());
  for (int z = 0; z < kGroupCount; ++z) {
    const auto idx = GroupIndices(data, z);
    if (idx.empty()) continue;
    double lo = 1.0;
    double hi = 0.0;
    for (std::size_t i : idx) {
      lo = std::min(lo, q[i]);
      hi = std::max(hi, q[i]);
    }
    out["ensemble.q.z" + std::to_string(z) + ".min"] = lo;
    out["ensemble.q.z" + std::to_string(z) + ".max"] = hi;
  }
  if (!pairs.empty()) {
    out["ensemble.treatment_violation_share"] =
        static_cast<double>(
            TreatmentViolations(q, pairs, kDefaultTolerance).size()) /
        static_cast<double>(pairs.size());
  }
  PutDispersion(out, "ensemble.dispersion", Dispersion(q, data));
  for (std::size_t j = 0; j < scenario.members.size(); ++j) {
    const DispersionComparison cmp = CompareDispersion(
        ensemble, Ensemble::Single(scenario.members[j]), data);
    PutDispersion(out, "dispersion_delta.vs_member" + std::to_string(j + 1),
                  DispersionReport{cmp.delta.groups});
  }

  for (std::size_t f = 0; f < data.dimension(); ++f) {
    out["best_fair_threshold.f" + std::to_string(f + 1) + ".accuracy"] =
        BestFairSingleThreshold(data, f, kDefaultTolerance).accuracy;
  }

  const MetricKind acceptance[] = {MetricKind::kAcceptanceRate};
  const MixtureSolution feasible =
      SolveFairMixture(scenario.members, data, acceptance, 0.0,
                       MixtureObjective::kFeasibilityOnly);
  const MixtureSolution optimum = SolveFairMixture(
      scenario.members, data, acceptance, 0.0, MixtureObjective::kMaxAccuracy);
  if (feasible.status == LpStatus::kOptimal) {
    for (std::size_t j = 0; j < feasible.weights.size(); ++j) {
      out["feasibility.weight" + std::to_string(j + 1)] = feasible.weights[j];
    }
  }
  if (optimum.status == LpStatus::kOptimal) {
    out["optimum.accuracy"] = optimum.accuracy;
    for (std::size_t j = 0; j < optimum.weights.size(); ++j) {
      out["optimum.weight" + std::to_string(j + 1)] = optimum.weights[j];
    }
  }
  return out;
}

std::vector<ScenarioCheck> SelfTest(const Scenario& scenario) {
  const std::map<std::string, double> actual = EvaluateScenario(scenario);
  std::vector<ScenarioCheck> checks;
  for (const auto& [key, expected] : scenario.expectations) {
    ScenarioCheck check{key, expected, std::nullopt, false};
    if (const auto it = actual.find(key); it != actual.end()) {
      check.actual = it->second;
      check.pass = std::fabs(it->second - expected) <= kScenarioTolerance;
    }
    checks.push_back(check);
  }
  return checks;
}

}  // namespace fairmix
