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

#ifndef FAIRMIX_OPTIMIZER_H_
#define FAIRMIX_OPTIMIZER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"
#include "fairmix/metrics.h"
#include "fairmix/simplex.h"

namespace fairmix {

enum class MixtureObjective { kMaxAccuracy, kFeasibilityOnly };

// Slack allowed on top of the requested tolerance when a solution is
// re-verified through the ensemble module.
inline constexpr double kSolutionSlack = 1e-9;

struct MetricGap {
  MetricKind kind = MetricKind::kAcceptanceRate;
  std::optional<double> gap;
};

struct MixtureSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> weights;  // empty unless optimal
  double accuracy = 0.0;
  double tolerance = 0.0;
  // Gaps of the constrained kinds, re-evaluated through the ensemble module.
  std::vector<MetricGap> gaps;
  // Every other kind, evaluated post hoc (PPV/NPV cannot be LP rows).
  std::vector<MetricGap> unconstrained_gaps;
  std::size_t iterations = 0;
};

// Builds the LP over mixture weights: maximize sum_j acc_j p_j (or 0),
// sum p = 1, and for every constrained kind
// -tol <= sum_j p_j (rate_j(z=0) - rate_j(z=1)) <= tol. An infinite
// tolerance drops the fairness rows.
LinearProgram BuildMixtureProgram(std::span<const Classifier> members,
                                  const Dataset& dataset,
                                  std::span<const MetricKind> constrained,
                                  double tolerance, MixtureObjective objective);

// Throws kContract for a non-linear constrained kind and kUndefinedMetric
// when a constrained rate is undefined for a member. Infeasibility is a
// status, not an error.
MixtureSolution SolveFairMixture(std::span<const Classifier> members,
                                 const Dataset& dataset,
                                 std::span<const MetricKind> constrained,
                                 double tolerance,
                                 MixtureObjective objective);

inline constexpr std::size_t kGridOracleMaxMembers = 4;
inline constexpr std::uint32_t kGridOracleMinResolution = 10;

struct OracleResult {
  std::optional<std::vector<double>> weights;  // best feasible lattice point
  double accuracy = 0.0;
  std::uint64_t feasible_points = 0;
  std::uint64_t visited_points = 0;
  std::uint32_t resolution = 0;
};

// Exhaustive search of the weight lattice with step 1/resolution, scored in
// exact integer arithmetic. Requires M <= 4 and resolution >= 10.
OracleResult GridOracle(std::span<const Classifier> members,
                        const Dataset& dataset,
                        std::span<const MetricKind> constrained,
                        double tolerance, std::uint32_t resolution);

enum class ThresholdDirection {
  kAbove,  // accept iff feature >= threshold
  kBelow,  // accept iff feature <= threshold
};

struct ThresholdResult {
  double threshold = 0.0;
  ThresholdDirection direction = ThresholdDirection::kAbove;
  double accuracy = 0.0;
  double acceptance_gap = 0.0;
  LinearClassifier classifier;
};

// The z-blind single threshold on one feature with the best accuracy among
// those whose AcceptanceRate gap is within `tolerance`. Candidate thresholds
// lie below, between and above the distinct feature values. Ties go to the
// smallest threshold, then kAbove. Throws kUndefinedMetric if a group is
// empty.
ThresholdResult BestFairSingleThreshold(const Dataset& dataset,
                                        std::size_t feature, double tolerance);

inline constexpr double kWitnessMinGap = 0.05;
inline constexpr std::size_t kWitnessMaxInstances = 40;

struct PpvWitness {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  Dataset dataset;
  std::vector<TableClassifier> members;
  std::vector<double> weights;
  std::array<double, 2> member_gaps{};
  double ensemble_gap = 0.0;
};

// Randomized search for two classifiers that are each exactly PPV-fair
// (checked with integer cross-multiplication) while their uniform mixture
// has |PPV gap| >= 0.05. Deterministic in `seed`; nullopt after max_trials.
std::optional<PpvWitness> PpvCounterexampleSearch(std::uint64_t seed,
                                                  std::uint64_t max_trials);

}  // namespace fairmix

#endif  // FAIRMIX_OPTIMIZER_H_
