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

#include "fairmix/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include "fairmix/ensemble.h"
#include "fairmix/error.h"
#include "fairmix/kernels.h"

namespace fairmix {
namespace {

void CheckLinearKinds(std::span<const MetricKind> constrained) {
  for (MetricKind kind : constrained) {
    if (!IsLinear(kind)) {
      throw Error(ErrorCode::kContract,
                  std::string(MetricName(kind)) +
                      " is not linear in the mixture weights and cannot be "
                      "constrained");
    }
  }
}

// Conditioning-set numerator and denominator counts of a linear kind.
struct RateCounts {
  double numerator = 0.0;
  double denominator = 0.0;
};

RateCounts LinearRateCounts(MetricKind kind, const OutcomeTally& t, int z) {
  switch (kind) {
    case MetricKind::kAcceptanceRate:
      return {t.predicted(z, true), t.group(z)};
    case MetricKind::kTpr:
      return {t.at(z, true, true), t.truth(z, true)};
    case MetricKind::kTnr:
      return {t.at(z, false, false), t.truth(z, false)};
    default:
      throw Error(ErrorCode::kContract, "not a linear metric");
  }
}

std::vector<OutcomeTally> MemberTallies(std::span<const Classifier> members,
                                        const Dataset& dataset) {
  if (members.empty()) {
    throw Error(ErrorCode::kContract, "need at least one member");
  }
  return kernels::parallel::TallyMembers(
      PredictionMatrix::Evaluate(members, dataset),
      DatasetColumns::Of(dataset));
}

double TallyAccuracy(const OutcomeTally& t) {
  double correct = 0.0;
  double total = 0.0;
  for (int z = 0; z < kGroupCount; ++z) {
    correct += t.at(z, true, true) + t.at(z, false, false);
    total += t.group(z);
  }
  return correct / total;
}

std::vector<double> CleanWeights(std::vector<double> x) {
  double sum = 0.0;
  for (double& v : x) {
    v = std::max(v, 0.0);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

LinearProgram BuildMixtureProgram(std::span<const Classifier> members,
                                  const Dataset& dataset,
                                  std::span<const MetricKind> constrained,
                                  double tolerance,
                                  MixtureObjective objective) {
  CheckLinearKinds(constrained);
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::kContract, "tolerance must be >= 0");
  }
  const std::vector<OutcomeTally> tallies = MemberTallies(members, dataset);
  const std::size_t m = members.size();

  LinearProgram lp;
  lp.objective.assign(m, 0.0);
  if (objective == MixtureObjective::kMaxAccuracy) {
    for (std::size_t j = 0; j < m; ++j) {
      lp.objective[j] = TallyAccuracy(tallies[j]);
    }
  }
  lp.AddSimplexRow();
  if (std::isinf(tolerance)) return lp;

  for (MetricKind kind : constrained) {
    std::vector<double> row(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto v0 = RateFromTally(kind, tallies[j], tallies[j], 0);
      const auto v1 = RateFromTally(kind, tallies[j], tallies[j], 1);
      if (!v0 || !v1) {
        throw Error(ErrorCode::kUndefinedMetric,
                    std::string(MetricName(kind)) +
                        " is undefined for member " + std::to_string(j + 1));
      }
      row[j] = *v0 - *v1;
    }
    std::vector<double> negated(m);
    std::transform(row.begin(), row.end(), negated.begin(),
                   [](double v) { return -v; });
    lp.AddLessEqual(std::move(row), tolerance);
    lp.AddLessEqual(std::move(negated), tolerance);
  }
  return lp;
}

MixtureSolution SolveFairMixture(std::span<const Classifier> members,
                                 const Dataset& dataset,
                                 std::span<const MetricKind> constrained,
                                 double tolerance,
                                 MixtureObjective objective) {
  const LinearProgram lp =
      BuildMixtureProgram(members, dataset, constrained, tolerance, objective);
  const LpSolution lp_solution = SimplexSolve(lp);

  MixtureSolution solution;
  solution.status = lp_solution.status;
  solution.tolerance = tolerance;
  solution.iterations = lp_solution.iterations;
  if (lp_solution.status != LpStatus::kOptimal) return solution;

  solution.weights = CleanWeights(lp_solution.x);
  const Ensemble ensemble(
      std::vector<Classifier>(members.begin(), members.end()),
      solution.weights);
  const EnsembleEvaluation eval(ensemble, dataset);
  solution.accuracy = eval.Accuracy();
  for (MetricKind kind : kAllMetricKinds) {
    const bool is_constrained =
        std::find(constrained.begin(), constrained.end(), kind) !=
        constrained.end();
    MetricGap entry{kind, eval.Gap(kind)};
    if (is_constrained) {
      if (!entry.gap ||
          std::fabs(*entry.gap) > tolerance + kSolutionSlack) {
        throw Error(ErrorCode::kContract,
                    "LP solution failed re-verification for " +
                        std::string(MetricName(kind)));
      }
      solution.gaps.push_back(entry);
    } else {
      solution.unconstrained_gaps.push_back(entry);
    }
  }
  return solution;
}

OracleResult GridOracle(std::span<const Classifier> members,
                        const Dataset& dataset,
                        std::span<const MetricKind> constrained,
                        double tolerance, std::uint32_t resolution) {
  CheckLinearKinds(constrained);
  if (members.empty() || members.size() > kGridOracleMaxMembers) {
    throw Error(ErrorCode::kContract,
                "grid oracle supports 1 to " +
                    std::to_string(kGridOracleMaxMembers) + " members");
  }
  if (resolution < kGridOracleMinResolution) {
    throw Error(ErrorCode::kContract, "grid oracle resolution must be >= " +
                                          std::to_string(
                                              kGridOracleMinResolution));
  }
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::kContract, "tolerance must be >= 0");
  }
  const std::vector<OutcomeTally> tallies = MemberTallies(members, dataset);

  GridProblem problem;
  problem.instance_count = static_cast<std::int64_t>(dataset.size());
  problem.tolerance = std::isinf(tolerance)
                          ? std::numeric_limits<double>::max()
                          : tolerance;
  problem.resolution = resolution;
  for (const OutcomeTally& t : tallies) {
    problem.member_correct.push_back(static_cast<std::int64_t>(
        t.at(0, true, true) + t.at(0, false, false) + t.at(1, true, true) +
        t.at(1, false, false)));
  }
  for (MetricKind kind : constrained) {
    GridConstraint constraint;
    const auto den0 = static_cast<std::int64_t>(
        LinearRateCounts(kind, tallies.front(), 0).denominator);
    const auto den1 = static_cast<std::int64_t>(
        LinearRateCounts(kind, tallies.front(), 1).denominator);
    if (den0 == 0 || den1 == 0) {
      throw Error(ErrorCode::kUndefinedMetric,
                  std::string(MetricName(kind)) + " is undefined");
    }
    constraint.denominator = den0 * den1;
    for (const OutcomeTally& t : tallies) {
      const auto num0 =
          static_cast<std::int64_t>(LinearRateCounts(kind, t, 0).numerator);
      const auto num1 =
          static_cast<std::int64_t>(LinearRateCounts(kind, t, 1).numerator);
      constraint.gap_numerators.push_back(num0 * den1 - num1 * den0);
    }
    problem.constraints.push_back(std::move(constraint));
  }

  const GridResult grid = kernels::parallel::GridSearch(problem);
  OracleResult result;
  result.resolution = resolution;
  result.feasible_points = grid.feasible_points;
  result.visited_points = grid.visited_points;
  if (grid.numerators) {
    std::vector<double> weights;
    for (std::uint32_t n : *grid.numerators) {
      weights.push_back(static_cast<double>(n) / resolution);
    }
    result.weights = std::move(weights);
    result.accuracy = grid.accuracy;
  }
  return result;
}

ThresholdResult BestFairSingleThreshold(const Dataset& dataset,
                                        std::size_t feature,
                                        double tolerance) {
  if (feature >= dataset.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature index out of range");
  }
  std::array<std::int64_t, kGroupCount> group_size{};
  for (const Instance& inst : dataset.instances()) ++group_size[inst.sensitive];
  if (group_size[0] == 0 || group_size[1] == 0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "acceptance-rate gap undefined: a group is empty");
  }

  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dataset[a].features[feature] < dataset[b].features[feature];
  });

  // Candidate k accepts (kAbove) exactly the instances after the k-th
  // distinct value block. Counts of the rejected prefix drive the sweep.
  struct Prefix {
    std::array<std::int64_t, kGroupCount> count{};
    std::int64_t positives = 0;
  };
  std::vector<double> thresholds;
  std::vector<Prefix> below;  // instances strictly below each threshold
  const auto value = [&](std::size_t k) {
    return dataset[order[k]].features[feature];
  };
  Prefix running;
  thresholds.push_back(value(0) - 1.0);
  below.push_back(running);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Instance& inst = dataset[order[k]];
    ++running.count[inst.sensitive];
    if (inst.label == Label::kPositive) ++running.positives;
    const bool block_end =
        k + 1 == order.size() || value(k + 1) != value(k);
    if (!block_end) continue;
    thresholds.push_back(k + 1 == order.size()
                             ? value(k) + 1.0
                             : value(k) + (value(k + 1) - value(k)) / 2.0);
    below.push_back(running);
  }

  std::int64_t total_positive = 0;
  for (const Instance& inst : dataset.instances()) {
    if (inst.label == Label::kPositive) ++total_positive;
  }
  const auto n = static_cast<std::int64_t>(dataset.size());

  ThresholdResult best;
  std::int64_t best_correct = -1;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    for (ThresholdDirection dir :
         {ThresholdDirection::kAbove, ThresholdDirection::kBelow}) {
      const bool above = dir == ThresholdDirection::kAbove;
      const Prefix& lo = below[k];
      // kAbove accepts the suffix, kBelow the prefix.
      std::array<std::int64_t, kGroupCount> accepted{};
      for (int z = 0; z < kGroupCount; ++z) {
        accepted[z] = above ? group_size[z] - lo.count[z] : lo.count[z];
      }
      const std::int64_t prefix_size = lo.count[0] + lo.count[1];
      const std::int64_t prefix_pos = lo.positives;
      const std::int64_t suffix_pos = total_positive - prefix_pos;
      const std::int64_t suffix_neg = (n - prefix_size) - suffix_pos;
      const std::int64_t prefix_neg = prefix_size - prefix_pos;
      const std::int64_t correct =
          above ? suffix_pos + prefix_neg : prefix_pos + suffix_neg;
      const double gap =
          static_cast<double>(accepted[0]) / static_cast<double>(group_size[0]) -
          static_cast<double>(accepted[1]) / static_cast<double>(group_size[1]);
      if (std::fabs(gap) > tolerance || correct <= best_correct) continue;
      best_correct = correct;
      best.threshold = thresholds[k];
      best.direction = dir;
      best.accuracy = static_cast<double>(correct) / static_cast<double>(n);
      best.acceptance_gap = gap;
    }
  }

  best.classifier.weights.assign(dataset.dimension(), 0.0);
  if (best.direction == ThresholdDirection::kAbove) {
    best.classifier.weights[feature] = 1.0;
    best.classifier.bias = -best.threshold;
  } else {
    best.classifier.weights[feature] = -1.0;
    best.classifier.bias = best.threshold;
  }
  return best;
}

std::optional<PpvWitness> PpvCounterexampleSearch(std::uint64_t seed,
                                                  std::uint64_t max_trials) {
  for (std::uint64_t trial = 0; trial < max_trials; ++trial) {
    std::mt19937_64 rng(CounterRandom(seed, 0x9917, trial));
    std::uniform_int_distribution<std::size_t> size_dist(6, 20);
    std::uniform_real_distribution<double> rate_dist(0.2, 0.8);
    const std::size_t n = size_dist(rng);
    const double p_group = rate_dist(rng);
    const double p_label = rate_dist(rng);
    const std::array<double, 2> p_accept = {rate_dist(rng), rate_dist(rng)};

    std::vector<Instance> instances(n);
    std::array<std::vector<Label>, 2> predictions;
    for (std::size_t i = 0; i < n; ++i) {
      instances[i].features = {static_cast<double>(i)};
      instances[i].sensitive =
          std::bernoulli_distribution(p_group)(rng) ? 1 : 0;
      instances[i].label = std::bernoulli_distribution(p_label)(rng)
                               ? Label::kPositive
                               : Label::kNegative;
      for (int j = 0; j < 2; ++j) {
        predictions[j].push_back(std::bernoulli_distribution(p_accept[j])(rng)
                                     ? Label::kPositive
                                     : Label::kNegative);
      }
    }
    if (predictions[0] == predictions[1]) continue;

    // Integer counts: tp[j][z], pp[j][z] (true and predicted positives).
    std::array<std::array<std::int64_t, 2>, 2> tp{};
    std::array<std::array<std::int64_t, 2>, 2> pp{};
    for (std::size_t i = 0; i < n; ++i) {
      const int z = instances[i].sensitive;
      for (int j = 0; j < 2; ++j) {
        if (predictions[j][i] != Label::kPositive) continue;
        ++pp[j][z];
        if (instances[i].label == Label::kPositive) ++tp[j][z];
      }
    }
    bool fair = true;
    for (int j = 0; j < 2 && fair; ++j) {
      fair = pp[j][0] > 0 && pp[j][1] > 0 &&
             tp[j][0] * pp[j][1] == tp[j][1] * pp[j][0];
    }
    if (!fair) continue;
    // Uniform mixture: PPV(z) = (tp0 + tp1) / (pp0 + pp1).
    const std::int64_t t0 = tp[0][0] + tp[1][0];
    const std::int64_t p0 = pp[0][0] + pp[1][0];
    const std::int64_t t1 = tp[0][1] + tp[1][1];
    const std::int64_t p1 = pp[0][1] + pp[1][1];
    // |gap| >= 1/20, cross-multiplied so the boundary is exact.
    static_assert(kWitnessMinGap == 0.05);
    if (20 * std::abs(t0 * p1 - t1 * p0) < p0 * p1) continue;
    const double mixed_gap = static_cast<double>(t0 * p1 - t1 * p0) /
                             static_cast<double>(p0 * p1);

    Dataset dataset(std::move(instances));
    std::vector<TableClassifier> members;
    std::vector<Classifier> as_classifiers;
    for (int j = 0; j < 2; ++j) {
      members.emplace_back(predictions[j], dataset);
      as_classifiers.emplace_back(members.back());
    }
    const Ensemble ensemble = Ensemble::Uniform(as_classifiers);
    const EnsembleEvaluation eval(ensemble, dataset);
    if (std::fabs(*eval.Gap(MetricKind::kPpv) - mixed_gap) > 1e-12) {
      throw Error(ErrorCode::kContract,
                  "witness failed re-verification through the ensemble");
    }
    PpvWitness witness{seed,
                       trial,
                       dataset,
                       members,
                       {ensemble.weights().begin(), ensemble.weights().end()},
                       {*eval.MemberGap(0, MetricKind::kPpv),
                        *eval.MemberGap(1, MetricKind::kPpv)},
                       *eval.Gap(MetricKind::kPpv)};
    return witness;
  }
  return std::nullopt;
}

}  // namespace fairmix
