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

#ifndef FAIRMIX_METRICS_H_
#define FAIRMIX_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"
#include "fairmix/kernels.h"

namespace fairmix {

enum class MetricKind { kAcceptanceRate, kTpr, kTnr, kPpv, kNpv };

inline constexpr std::array<MetricKind, 5> kAllMetricKinds = {
    MetricKind::kAcceptanceRate, MetricKind::kTpr, MetricKind::kTnr,
    MetricKind::kPpv, MetricKind::kNpv};

// "AcceptanceRate", "TPR", "TNR", "PPV", "NPV".
std::string_view MetricName(MetricKind kind);
// Accepts the names above, case-insensitively.
std::optional<MetricKind> ParseMetricKind(std::string_view name);

// True for the kinds whose ensemble value is the p-weighted mean of the
// member values (conditioning set independent of the classifier).
constexpr bool IsLinear(MetricKind kind) {
  return kind == MetricKind::kAcceptanceRate || kind == MetricKind::kTpr ||
         kind == MetricKind::kTnr;
}

// Default pass/fail tolerance on |gap|.
inline constexpr double kDefaultTolerance = 1e-9;

// Rate of `kind` for group z from a (possibly probability-weighted) tally.
// Denominators of linear kinds come from `population`, the tally of true
// labels (any classifier's tally of the same dataset works). nullopt when
// the conditioning set is empty.
std::optional<double> RateFromTally(MetricKind kind, const OutcomeTally& tally,
                                    const OutcomeTally& population, int z);

OutcomeTally TallyPredictions(std::span<const Label> predictions,
                              const Dataset& dataset);

double Accuracy(std::span<const Label> predictions, const Dataset& dataset);

std::optional<double> GroupRate(MetricKind kind,
                                std::span<const Label> predictions,
                                const Dataset& dataset, int z);

// value(z=0) - value(z=1); nullopt if either side is undefined.
std::optional<double> FairnessGap(MetricKind kind,
                                  std::span<const Label> predictions,
                                  const Dataset& dataset);

struct GroupMetric {
  MetricKind kind = MetricKind::kAcceptanceRate;
  std::optional<double> value_z0;
  std::optional<double> value_z1;
  std::optional<double> gap;
  // nullopt means "not assessable" (gap undefined).
  std::optional<bool> pass;
};

GroupMetric MakeGroupMetric(MetricKind kind, std::optional<double> value_z0,
                            std::optional<double> value_z1, double tolerance);

// All five kinds for one prediction vector.
std::vector<GroupMetric> EvaluateGroupMetrics(
    std::span<const Label> predictions, const Dataset& dataset,
    double tolerance);

// Pairs on which a deterministic classifier's labels differ.
std::vector<CounterfactualPair> TreatmentViolations(
    const Classifier& classifier, const Dataset& dataset,
    std::span<const CounterfactualPair> pairs);

// Pairs on which per-instance acceptance probabilities differ by more than
// `tolerance`.
std::vector<CounterfactualPair> TreatmentViolations(
    std::span<const double> acceptance_probability,
    std::span<const CounterfactualPair> pairs, double tolerance);

// Instances whose label changes when only z is flipped. Needs a classifier
// with a functional form; table classifiers throw kUnsupportedQuery.
std::vector<std::size_t> FlipTestViolations(const Classifier& classifier,
                                            const Dataset& dataset);

}  // namespace fairmix

#endif  // FAIRMIX_METRICS_H_
