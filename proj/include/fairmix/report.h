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

// Fairness reports and the JSON documents the CLI emits.

#ifndef FAIRMIX_REPORT_H_
#define FAIRMIX_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"
#include "fairmix/distributional.h"
#include "fairmix/ensemble.h"
#include "fairmix/metrics.h"
#include "fairmix/optimizer.h"
#include "fairmix/scenarios.h"
#include "json.hpp"

namespace fairmix {

struct TreatmentSummary {
  std::size_t pairs_checked = 0;
  std::vector<CounterfactualPair> violations;
};

struct FairnessReport {
  std::string subject;
  double accuracy = 0.0;
  double tolerance = kDefaultTolerance;
  std::vector<GroupMetric> metrics;  // all five kinds
  TreatmentSummary treatment;
  std::optional<std::vector<double>> weights;        // ensembles only
  std::optional<DispersionReport> distributional;    // ensembles only
};

// Deterministic classifier report; treatment compares labels on `pairs`.
FairnessReport AuditClassifier(const Classifier& classifier,
                               const Dataset& dataset,
                               std::span<const CounterfactualPair> pairs,
                               double tolerance, std::string subject);

// Ensemble report from analytic counts; treatment compares acceptance
// probabilities on `pairs` within `tolerance`.
FairnessReport AuditEnsemble(const Ensemble& ensemble, const Dataset& dataset,
                             std::span<const CounterfactualPair> pairs,
                             double tolerance);

// Instance indices are written 1-based.
nlohmann::json ToJson(const FairnessReport& report);
nlohmann::json ToJson(const DispersionReport& report);
nlohmann::json ToJson(const MixtureSolution& solution);
nlohmann::json ToJson(const OracleResult& oracle);
nlohmann::json ToJson(const SampleResult& result);
nlohmann::json ToJson(const PpvWitness& witness);
nlohmann::json ExpectationsJson(const Scenario& scenario);
nlohmann::json ToJson(std::span<const ScenarioCheck> checks);

}  // namespace fairmix

#endif  // FAIRMIX_REPORT_H_
