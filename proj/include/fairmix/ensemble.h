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

#ifndef FAIRMIX_ENSEMBLE_H_
#define FAIRMIX_ENSEMBLE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairmix/classifier.h"
#include "fairmix/dataset.h"
#include "fairmix/kernels.h"
#include "fairmix/metrics.h"

namespace fairmix {

// Tolerance on sum(p) == 1 accepted by the Ensemble constructor.
inline constexpr double kWeightSumTolerance = 1e-12;

// A random ensemble: each decision is made by one member drawn from p.
class Ensemble {
 public:
  // Throws kContract unless M >= 1, p_j >= 0 and |sum(p) - 1| <= 1e-12.
  Ensemble(std::vector<Classifier> members, std::vector<double> weights);

  static Ensemble Uniform(std::vector<Classifier> members);
  static Ensemble Single(Classifier member);

  std::size_t size() const { return members_.size(); }
  std::span<const Classifier> members() const { return members_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<Classifier> members_;
  std::vector<double> weights_;
};

// Per-instance probability of the +1 outcome, q_i = sum_{j: C_j(x_i)=+1} p_j.
using BenefitProfile = std::vector<double>;

// Evaluates an ensemble on one dataset. Member predictions and tallies are
// computed once at construction.
class EnsembleEvaluation {
 public:
  EnsembleEvaluation(const Ensemble& ensemble, const Dataset& dataset);

  std::span<const double> weights() const { return weights_; }
  const PredictionMatrix& predictions() const { return predictions_; }
  std::span<const OutcomeTally> member_tallies() const { return tallies_; }

  BenefitProfile Profile() const;
  // Linear kinds: sum_j p_j * rate_j(z). PPV/NPV: ratio of p-weighted counts.
  std::optional<double> GroupRate(MetricKind kind, int z) const;
  std::optional<double> Gap(MetricKind kind) const;
  std::optional<double> MemberRate(std::size_t member, MetricKind kind,
                                   int z) const;
  std::optional<double> MemberGap(std::size_t member, MetricKind kind) const;
  double MemberAccuracy(std::size_t member) const;
  // sum_j p_j * accuracy(C_j).
  double Accuracy() const;

 private:
  std::vector<double> weights_;
  PredictionMatrix predictions_;
  std::vector<OutcomeTally> tallies_;
};

BenefitProfile AcceptanceProbability(const Ensemble& ensemble,
                                     const Dataset& dataset);

std::optional<double> EnsembleGroupRate(const Ensemble& ensemble,
                                        MetricKind kind,
                                        const Dataset& dataset, int z);

struct ClosureReport {
  MetricKind kind = MetricKind::kAcceptanceRate;
  bool linear = false;
  std::optional<double> ensemble_gap;
  std::optional<double> weighted_member_gap_sum;  // sum_j p_j * gap_j
  // Linear kinds only: |ensemble_gap - weighted sum| <= 1e-9.
  std::optional<bool> identity_holds;
};

inline constexpr double kClosureTolerance = 1e-9;

ClosureReport ClosureCheck(const Ensemble& ensemble, MetricKind kind,
                           const Dataset& dataset);

struct GroupEstimate {
  double rate = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(draws)
};

struct SampleResult {
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::kPerDraw;
  std::string generator;
  std::vector<DrawRecord> draws;
  std::array<std::size_t, kGroupCount> group_sizes{};
  // nullopt for an empty group.
  std::array<std::optional<GroupEstimate>, kGroupCount> estimates;
};

// Seeded Monte Carlo realization of the ensemble, for validation only; every
// analytic quantity above is computed from counts.
SampleResult Sample(const Ensemble& ensemble, const Dataset& dataset,
                    std::uint64_t n_draws, std::uint64_t seed,
                    SamplingMode mode = SamplingMode::kPerDraw);

// Labels realized in draw `draw` of `result`, recomputed from the generator.
std::vector<Label> SampledLabels(const Ensemble& ensemble,
                                 const Dataset& dataset,
                                 const SampleResult& result,
                                 std::uint64_t draw);

// `draw,member_index,rate_z0,rate_z1`; empty member_index in per-instance
// mode, empty rate for an empty group.
void WriteSampleCsv(const SampleResult& result, std::ostream& out);

// {"weights": [p_1, ..., p_M]}. Files carry 12 significant digits, so the
// sum is checked to 1e-9 and the vector is then renormalized to sum to 1.
inline constexpr double kWeightFileSumTolerance = 1e-9;
std::vector<double> ParseWeightsJson(std::istream& in);
std::vector<double> LoadWeights(const std::filesystem::path& path);
void WriteWeightsJson(std::span<const double> weights, std::ostream& out);

}  // namespace fairmix

#endif  // FAIRMIX_ENSEMBLE_H_
