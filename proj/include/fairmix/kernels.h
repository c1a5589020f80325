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

// Data-parallel kernels behind the metric, ensemble, optimizer and dispersion
// modules. Every kernel exists twice: `serial` is the reference
// implementation and `parallel` the OpenMP one. Both must produce identical
// results (bitwise for integer work, and for floating point wherever the
// reduction order is fixed); the test suite checks this and bench/ compares
// their speed.

#ifndef FAIRMIX_KERNELS_H_
#define FAIRMIX_KERNELS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"

namespace fairmix {

// Counts (or probability-weighted counts) of instances by sensitive group,
// true label and predicted label.
struct OutcomeTally {
  std::array<double, 8> counts{};

  static constexpr std::size_t Index(int z, bool truth_positive,
                                     bool predicted_positive) {
    return static_cast<std::size_t>(z) * 4 + (truth_positive ? 2 : 0) +
           (predicted_positive ? 1 : 0);
  }
  double& at(int z, bool truth_positive, bool predicted_positive) {
    return counts[Index(z, truth_positive, predicted_positive)];
  }
  double at(int z, bool truth_positive, bool predicted_positive) const {
    return counts[Index(z, truth_positive, predicted_positive)];
  }
  // Instances in group z with the given prediction, either truth.
  double predicted(int z, bool predicted_positive) const {
    return at(z, false, predicted_positive) + at(z, true, predicted_positive);
  }
  // Instances in group z with the given truth, either prediction.
  double truth(int z, bool truth_positive) const {
    return at(z, truth_positive, false) + at(z, truth_positive, true);
  }
  double group(int z) const { return truth(z, false) + truth(z, true); }
};

// Column view of a dataset as the kernels consume it.
struct DatasetColumns {
  std::vector<Label> truth;
  std::vector<std::uint8_t> group;

  static DatasetColumns Of(const Dataset& dataset);
};

// Draw layout for the Monte Carlo sampler.
enum class SamplingMode {
  kPerDraw,      // one member per draw, applied to every instance
  kPerInstance,  // an independent member per (draw, instance)
};

// Per-draw sampler output. member_index is -1 in per-instance mode.
struct DrawRecord {
  std::int64_t member_index = -1;
  std::array<std::uint32_t, kGroupCount> accepted{};
};

// Best lattice point found by the grid search.
struct GridResult {
  std::optional<std::vector<std::uint32_t>> numerators;  // weights * r
  double accuracy = 0.0;
  std::uint64_t feasible_points = 0;
  std::uint64_t visited_points = 0;
};

// Inputs of the lattice search, in exact integer form. Member j's accuracy is
// member_correct[j] / instance_count; its gap for a constraint is
// gap_numerators[j] / denominator. Both are linear in the weights, so a
// lattice point n (weights n / resolution) is scored without rounding.
struct GridConstraint {
  std::vector<std::int64_t> gap_numerators;
  std::int64_t denominator = 1;
};

struct GridProblem {
  std::vector<std::int64_t> member_correct;
  std::int64_t instance_count = 1;
  std::vector<GridConstraint> constraints;
  double tolerance = 0.0;
  std::uint32_t resolution = 0;
};

// Counter-based 64-bit generator: the value for (seed, stream, index) is a
// pure function of its arguments, so sampled output does not depend on
// thread count or scheduling.
inline constexpr const char* kGeneratorName = "splitmix64-counter";
inline constexpr int kGeneratorVersion = 1;
std::uint64_t CounterRandom(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index);
// Uniform double in [0, 1) with 53 random bits.
double CounterUniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index);

// Member selected by inverse CDF: the first j with u < cdf[j]. Members with
// zero weight are never selected.
std::size_t SelectMember(std::span<const double> cdf, double u);
std::vector<double> CumulativeWeights(std::span<const double> weights);

namespace kernels {

// BenefitProfile: q_i = sum of the weights of the members predicting +1 on
// instance i.
//
// TallyMembers: one OutcomeTally of integer counts per member.
//
// SampleDraws: n_draws seeded draws; per-group acceptance counts per draw.
//
// GridSearch: exhaustive scan of the simplex lattice with step 1/resolution,
// keeping the feasible point of maximum accuracy. Ties go to the
// lexicographically smallest weight vector.
//
// AbsoluteDifferenceSum: sum over all ordered pairs of |v_i - v_k|.
namespace serial {
std::vector<double> BenefitProfile(const PredictionMatrix& predictions,
                                   std::span<const double> weights);
std::vector<OutcomeTally> TallyMembers(const PredictionMatrix& predictions,
                                       const DatasetColumns& columns);
std::vector<DrawRecord> SampleDraws(const PredictionMatrix& predictions,
                                    const DatasetColumns& columns,
                                    std::span<const double> weights,
                                    std::uint64_t n_draws, std::uint64_t seed,
                                    SamplingMode mode);
GridResult GridSearch(const GridProblem& problem);
double AbsoluteDifferenceSum(std::span<const double> values);
}  // namespace serial

namespace parallel {
std::vector<double> BenefitProfile(const PredictionMatrix& predictions,
                                   std::span<const double> weights);
std::vector<OutcomeTally> TallyMembers(const PredictionMatrix& predictions,
                                       const DatasetColumns& columns);
std::vector<DrawRecord> SampleDraws(const PredictionMatrix& predictions,
                                    const DatasetColumns& columns,
                                    std::span<const double> weights,
                                    std::uint64_t n_draws, std::uint64_t seed,
                                    SamplingMode mode);
GridResult GridSearch(const GridProblem& problem);
double AbsoluteDifferenceSum(std::span<const double> values);
}  // namespace parallel

// Number of lattice points on the M-simplex with step 1/r: C(r + M - 1, M - 1).
std::uint64_t LatticeSize(std::size_t members, std::uint32_t resolution);

}  // namespace kernels
}  // namespace fairmix

#endif  // FAIRMIX_KERNELS_H_
