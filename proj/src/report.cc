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

#include "fairmix/report.h"

#include <cmath>

#include "fairmix/json_writer.h"

namespace fairmix {
namespace {

nlohmann::json OptionalBool(const std::optional<bool>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

nlohmann::json PairJson(const CounterfactualPair& pair) {
  return nlohmann::json::array({pair.left + 1, pair.right + 1});
}

nlohmann::json GapsJson(std::span<const MetricGap> gaps) {
  nlohmann::json out = nlohmann::json::object();
  for (const MetricGap& g : gaps) {
    out[std::string(MetricName(g.kind))] = OptionalNumber(g.gap);
  }
  return out;
}

}  // namespace

FairnessReport AuditClassifier(const Classifier& classifier,
                               const Dataset& dataset,
                               std::span<const CounterfactualPair> pairs,
                               double tolerance, std::string subject) {
  const std::vector<Label> labels = PredictAll(classifier, dataset);
  FairnessReport report;
  report.subject = std::move(subject);
  report.tolerance = tolerance;
  report.accuracy = Accuracy(labels, dataset);
  report.metrics = EvaluateGroupMetrics(labels, dataset, tolerance);
  report.treatment.pairs_checked = pairs.size();
  report.treatment.violations = TreatmentViolations(classifier, dataset, pairs);
  return report;
}

FairnessReport AuditEnsemble(const Ensemble& ensemble, const Dataset& dataset,
                             std::span<const CounterfactualPair> pairs,
                             double tolerance) {
  const EnsembleEvaluation eval(ensemble, dataset);
  const BenefitProfile q = eval.Profile();
  FairnessReport report;
  report.subject = "ensemble";
  report.tolerance = tolerance;
  report.accuracy = eval.Accuracy();
  for (MetricKind kind : kAllMetricKinds) {
    report.metrics.push_back(MakeGroupMetric(kind, eval.GroupRate(kind, 0),
                                             eval.GroupRate(kind, 1),
                                             tolerance));
  }
  report.treatment.pairs_checked = pairs.size();
  report.treatment.violations = TreatmentViolations(q, pairs, tolerance);
  report.weights.emplace(ensemble.weights().begin(), ensemble.weights().end());
  report.distributional = Dispersion(q, dataset);
  return report;
}

nlohmann::json ToJson(const DispersionReport& report) {
  nlohmann::json out;
  out["extension"] = true;
  for (int z = 0; z < kGroupCount; ++z) {
    const GroupDispersion& g = report.groups[z];
    out["z" + std::to_string(z)] = {
        {"size", g.size},
        {"mean_q", OptionalNumber(g.mean_q)},
        {"variance_q", OptionalNumber(g.variance_q)},
        {"gini_q", OptionalNumber(g.gini_q)},
        {"determinism_index", OptionalNumber(g.determinism_index)},
    };
  }
  return out;
}

nlohmann::json ToJson(const FairnessReport& report) {
  nlohmann::json out;
  out["subject"] = report.subject;
  out["accuracy"] = report.accuracy;
  out["tolerance"] = report.tolerance;
  out["gap_convention"] = "value_z0 - value_z1";
  nlohmann::json metrics = nlohmann::json::array();
  for (const GroupMetric& m : report.metrics) {
    metrics.push_back({
        {"kind", std::string(MetricName(m.kind))},
        {"value_z0", OptionalNumber(m.value_z0)},
        {"value_z1", OptionalNumber(m.value_z1)},
        {"gap", OptionalNumber(m.gap)},
        {"pass", OptionalBool(m.pass)},
    });
  }
  out["metrics"] = std::move(metrics);
  nlohmann::json pairs = nlohmann::json::array();
  for (const CounterfactualPair& p : report.treatment.violations) {
    pairs.push_back(PairJson(p));
  }
  out["treatment"] = {{"checked", report.treatment.pairs_checked},
                      {"violations", report.treatment.violations.size()},
                      {"pairs", std::move(pairs)}};
  if (report.weights) out["weights"] = *report.weights;
  if (report.distributional) {
    out["distributional"] = ToJson(*report.distributional);
  }
  return out;
}

nlohmann::json ToJson(const MixtureSolution& solution) {
  nlohmann::json out;
  out["status"] = std::string(LpStatusName(solution.status));
  out["tolerance"] = OptionalNumber(
      std::isinf(solution.tolerance) ? std::nullopt
                                     : std::optional(solution.tolerance));
  out["iterations"] = solution.iterations;
  if (solution.status == LpStatus::kOptimal) {
    out["weights"] = solution.weights;
    out["accuracy"] = solution.accuracy;
    out["gaps"] = GapsJson(solution.gaps);
    out["unconstrained_gaps"] = GapsJson(solution.unconstrained_gaps);
  } else {
    out["weights"] = nullptr;
    out["accuracy"] = nullptr;
  }
  return out;
}

nlohmann::json ToJson(const OracleResult& oracle) {
  nlohmann::json out;
  out["resolution"] = oracle.resolution;
  out["feasible_points"] = oracle.feasible_points;
  out["visited_points"] = oracle.visited_points;
  if (oracle.weights) {
    out["weights"] = *oracle.weights;
    out["accuracy"] = oracle.accuracy;
  } else {
    out["weights"] = nullptr;
    out["accuracy"] = nullptr;
  }
  return out;
}

nlohmann::json ToJson(const SampleResult& result) {
  nlohmann::json out;
  out["seed"] = result.seed;
  out["generator"] = result.generator;
  out["mode"] =
      result.mode == SamplingMode::kPerDraw ? "per_draw" : "per_instance";
  out["draws"] = result.draws.size();
  for (int z = 0; z < kGroupCount; ++z) {
    const auto& e = result.estimates[z];
    out["z" + std::to_string(z)] = {
        {"size", result.group_sizes[z]},
        {"rate", e ? nlohmann::json(e->rate) : nlohmann::json(nullptr)},
        {"standard_error",
         e ? nlohmann::json(e->standard_error) : nlohmann::json(nullptr)},
    };
  }
  return out;
}

nlohmann::json ToJson(const PpvWitness& witness) {
  nlohmann::json out;
  out["seed"] = witness.seed;
  out["trial"] = witness.trial;
  out["instances"] = witness.dataset.size();
  out["weights"] = witness.weights;
  out["member_ppv_gaps"] = witness.member_gaps;
  out["ensemble_ppv_gap"] = witness.ensemble_gap;
  out["min_gap"] = kWitnessMinGap;
  return out;
}

nlohmann::json ExpectationsJson(const Scenario& scenario) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, value] : scenario.expectations) out[key] = value;
  return out;
}

nlohmann::json ToJson(std::span<const ScenarioCheck> checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const ScenarioCheck& c : checks) {
    out.push_back({{"key", c.key},
                   {"expected", c.expected},
                   {"actual", OptionalNumber(c.actual)},
                   {"pass", c.pass}});
  }
  return out;
}

}  // namespace fairmix
