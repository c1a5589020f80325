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

#include "fairmix/metrics.h"

#include <cctype>
#include <cmath>
#include <string>

#include "fairmix/error.h"

namespace fairmix {
namespace {

std::optional<double> Ratio(double numerator, double denominator) {
  if (denominator == 0.0) return std::nullopt;
  return numerator / denominator;
}

void CheckLength(std::span<const Label> predictions, const Dataset& dataset) {
  if (predictions.size() != dataset.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prediction vector has " + std::to_string(predictions.size()) +
                    " entries for " + std::to_string(dataset.size()) +
                    " instances");
  }
}

}  // namespace

std::string_view MetricName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kAcceptanceRate:
      return "AcceptanceRate";
    case MetricKind::kTpr:
      return "TPR";
    case MetricKind::kTnr:
      return "TNR";
    case MetricKind::kPpv:
      return "PPV";
    case MetricKind::kNpv:
      return "NPV";
  }
  return "?";
}

std::optional<MetricKind> ParseMetricKind(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  for (MetricKind kind : kAllMetricKinds) {
    std::string candidate(MetricName(kind));
    for (char& c : candidate) c = static_cast<char>(std::tolower(c));
    if (candidate == lower) return kind;
  }
  return std::nullopt;
}

std::optional<double> RateFromTally(MetricKind kind, const OutcomeTally& tally,
                                    const OutcomeTally& population, int z) {
  switch (kind) {
    case MetricKind::kAcceptanceRate:
      return Ratio(tally.predicted(z, true), population.group(z));
    case MetricKind::kTpr:
      return Ratio(tally.at(z, true, true), population.truth(z, true));
    case MetricKind::kTnr:
      return Ratio(tally.at(z, false, false), population.truth(z, false));
    case MetricKind::kPpv:
      return Ratio(tally.at(z, true, true), tally.predicted(z, true));
    case MetricKind::kNpv:
      return Ratio(tally.at(z, false, false), tally.predicted(z, false));
  }
  return std::nullopt;
}

OutcomeTally TallyPredictions(std::span<const Label> predictions,
                              const Dataset& dataset) {
  CheckLength(predictions, dataset);
  OutcomeTally tally;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    tally.at(dataset[i].sensitive, dataset[i].label == Label::kPositive,
             predictions[i] == Label::kPositive) += 1.0;
  }
  return tally;
}

double Accuracy(std::span<const Label> predictions, const Dataset& dataset) {
  CheckLength(predictions, dataset);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == dataset[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.size());
}

std::optional<double> GroupRate(MetricKind kind,
                                std::span<const Label> predictions,
                                const Dataset& dataset, int z) {
  if (z != 0 && z != 1) {
    throw Error(ErrorCode::kContract, "sensitive value must be 0 or 1");
  }
  const OutcomeTally tally = TallyPredictions(predictions, dataset);
  return RateFromTally(kind, tally, tally, z);
}

std::optional<double> FairnessGap(MetricKind kind,
                                  std::span<const Label> predictions,
                                  const Dataset& dataset) {
  const OutcomeTally tally = TallyPredictions(predictions, dataset);
  const auto v0 = RateFromTally(kind, tally, tally, 0);
  const auto v1 = RateFromTally(kind, tally, tally, 1);
  if (!v0 || !v1) return std::nullopt;
  return *v0 - *v1;
}

GroupMetric MakeGroupMetric(MetricKind kind, std::optional<double> value_z0,
                            std::optional<double> value_z1, double tolerance) {
  GroupMetric metric{kind, value_z0, value_z1, std::nullopt, std::nullopt};
  if (value_z0 && value_z1) {
    metric.gap = *value_z0 - *value_z1;
    metric.pass = std::fabs(*metric.gap) <= tolerance;
  }
  return metric;
}

std::vector<GroupMetric> EvaluateGroupMetrics(
    std::span<const Label> predictions, const Dataset& dataset,
    double tolerance) {
  const OutcomeTally tally = TallyPredictions(predictions, dataset);
  std::vector<GroupMetric> metrics;
  for (MetricKind kind : kAllMetricKinds) {
    metrics.push_back(MakeGroupMetric(kind, RateFromTally(kind, tally, tally, 0),
                                      RateFromTally(kind, tally, tally, 1),
                                      tolerance));
  }
  return metrics;
}

std::vector<CounterfactualPair> TreatmentViolations(
    const Classifier& classifier, const Dataset& dataset,
    std::span<const CounterfactualPair> pairs) {
  const std::vector<Label> labels = PredictAll(classifier, dataset);
  std::vector<CounterfactualPair> violations;
  for (const CounterfactualPair& pair : pairs) {
    if (pair.left >= dataset.size() || pair.right >= dataset.size()) {
      throw Error(ErrorCode::kContract, "counterfactual pair out of range");
    }
    if (labels[pair.left] != labels[pair.right]) violations.push_back(pair);
  }
  return violations;
}

std::vector<CounterfactualPair> TreatmentViolations(
    std::span<const double> acceptance_probability,
    std::span<const CounterfactualPair> pairs, double tolerance) {
  std::vector<CounterfactualPair> violations;
  for (const CounterfactualPair& pair : pairs) {
    if (pair.left >= acceptance_probability.size() ||
        pair.right >= acceptance_probability.size()) {
      throw Error(ErrorCode::kContract, "counterfactual pair out of range");
    }
    if (std::fabs(acceptance_probability[pair.left] -
                  acceptance_probability[pair.right]) > tolerance) {
      violations.push_back(pair);
    }
  }
  return violations;
}

std::vector<std::size_t> FlipTestViolations(const Classifier& classifier,
                                            const Dataset& dataset) {
  CheckCompatible(classifier, dataset);
  std::vector<std::size_t> changed;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (Predict(classifier, dataset, i) !=
        PredictFlipped(classifier, dataset, i)) {
      changed.push_back(i);
    }
  }
  return changed;
}

}  // namespace fairmix
