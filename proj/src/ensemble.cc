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

#include "fairmix/ensemble.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>

#include "fairmix/error.h"
#include "fairmix/json_writer.h"
#include "json.hpp"

namespace fairmix {

Ensemble::Ensemble(std::vector<Classifier> members, std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.empty()) {
    throw Error(ErrorCode::kContract, "ensemble needs at least one member");
  }
  if (weights_.size() != members_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ensemble has " + std::to_string(members_.size()) +
                    " members but " + std::to_string(weights_.size()) +
                    " weights");
  }
  double sum = 0.0;
  for (double p : weights_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kContract, "ensemble weights must be >= 0");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::kContract, "ensemble weights must sum to 1");
  }
}

Ensemble Ensemble::Uniform(std::vector<Classifier> members) {
  const std::size_t m = members.size();
  std::vector<double> weights(m, m == 0 ? 0.0 : 1.0 / static_cast<double>(m));
  return Ensemble(std::move(members), std::move(weights));
}

Ensemble Ensemble::Single(Classifier member) {
  std::vector<Classifier> members;
  members.push_back(std::move(member));
  return Ensemble(std::move(members), {1.0});
}

EnsembleEvaluation::EnsembleEvaluation(const Ensemble& ensemble,
                                       const Dataset& dataset)
    : weights_(ensemble.weights().begin(), ensemble.weights().end()),
      predictions_(PredictionMatrix::Evaluate(ensemble.members(), dataset)),
      tallies_(kernels::parallel::TallyMembers(predictions_,
                                               DatasetColumns::Of(dataset))) {}

BenefitProfile EnsembleEvaluation::Profile() const {
  return kernels::parallel::BenefitProfile(predictions_, weights_);
}

std::optional<double> EnsembleEvaluation::MemberRate(std::size_t member,
                                                     MetricKind kind,
                                                     int z) const {
  return RateFromTally(kind, tallies_[member], tallies_[member], z);
}

std::optional<double> EnsembleEvaluation::MemberGap(std::size_t member,
                                                    MetricKind kind) const {
  const auto v0 = MemberRate(member, kind, 0);
  const auto v1 = MemberRate(member, kind, 1);
  if (!v0 || !v1) return std::nullopt;
  return *v0 - *v1;
}

double EnsembleEvaluation::MemberAccuracy(std::size_t member) const {
  const OutcomeTally& t = tallies_[member];
  double correct = 0.0;
  double total = 0.0;
  for (int z = 0; z < kGroupCount; ++z) {
    correct += t.at(z, true, true) + t.at(z, false, false);
    total += t.group(z);
  }
  return correct / total;
}

double EnsembleEvaluation::Accuracy() const {
  double acc = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    acc += weights_[j] * MemberAccuracy(j);
  }
  return acc;
}

std::optional<double> EnsembleEvaluation::GroupRate(MetricKind kind,
                                                    int z) const {
  if (z != 0 && z != 1) {
    throw Error(ErrorCode::kContract, "sensitive value must be 0 or 1");
  }
  if (IsLinear(kind)) {
    double rate = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      const auto member = MemberRate(j, kind, z);
      if (!member) return std::nullopt;
      rate += weights_[j] * *member;
    }
    return rate;
  }
  // Population semantics of "select, then classify": expected counts of the
  // numerator and denominator events, then their ratio.
  OutcomeTally mixed;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    for (std::size_t k = 0; k < mixed.counts.size(); ++k) {
      mixed.counts[k] += weights_[j] * tallies_[j].counts[k];
    }
  }
  return RateFromTally(kind, mixed, tallies_.front(), z);
}

std::optional<double> EnsembleEvaluation::Gap(MetricKind kind) const {
  const auto v0 = GroupRate(kind, 0);
  const auto v1 = GroupRate(kind, 1);
  if (!v0 || !v1) return std::nullopt;
  return *v0 - *v1;
}

BenefitProfile AcceptanceProbability(const Ensemble& ensemble,
                                     const Dataset& dataset) {
  return EnsembleEvaluation(ensemble, dataset).Profile();
}

std::optional<double> EnsembleGroupRate(const Ensemble& ensemble,
                                        MetricKind kind,
                                        const Dataset& dataset, int z) {
  return EnsembleEvaluation(ensemble, dataset).GroupRate(kind, z);
}

ClosureReport ClosureCheck(const Ensemble& ensemble, MetricKind kind,
                           const Dataset& dataset) {
  const EnsembleEvaluation eval(ensemble, dataset);
  ClosureReport report;
  report.kind = kind;
  report.linear = IsLinear(kind);
  report.ensemble_gap = eval.Gap(kind);
  double weighted = 0.0;
  bool defined = true;
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    const auto gap = eval.MemberGap(j, kind);
    if (!gap) {
      defined = false;
      break;
    }
    weighted += ensemble.weights()[j] * *gap;
  }
  if (defined) report.weighted_member_gap_sum = weighted;
  if (report.linear && report.ensemble_gap && report.weighted_member_gap_sum) {
    report.identity_holds =
        std::fabs(*report.ensemble_gap - *report.weighted_member_gap_sum) <=
        kClosureTolerance;
  }
  return report;
}

SampleResult Sample(const Ensemble& ensemble, const Dataset& dataset,
                    std::uint64_t n_draws, std::uint64_t seed,
                    SamplingMode mode) {
  if (n_draws == 0) {
    throw Error(ErrorCode::kContract, "n_draws must be at least 1");
  }
  const PredictionMatrix predictions =
      PredictionMatrix::Evaluate(ensemble.members(), dataset);
  const DatasetColumns columns = DatasetColumns::Of(dataset);

  SampleResult result;
  result.seed = seed;
  result.mode = mode;
  result.generator = std::string(kGeneratorName) + " v" +
                     std::to_string(kGeneratorVersion);
  result.draws = kernels::parallel::SampleDraws(
      predictions, columns, ensemble.weights(), n_draws, seed, mode);
  for (std::uint8_t g : columns.group) ++result.group_sizes[g];

  const auto n = static_cast<long double>(n_draws);
  for (int z = 0; z < kGroupCount; ++z) {
    const std::size_t size = result.group_sizes[z];
    if (size == 0) continue;
    // Integer sums of accepted counts keep the variance exact for constant
    // draws.
    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;
    for (const DrawRecord& draw : result.draws) {
      sum += draw.accepted[z];
      sum_sq += static_cast<unsigned __int128>(draw.accepted[z]) *
                draw.accepted[z];
    }
    const long double mean = static_cast<long double>(sum) / n;
    long double var = 0.0L;
    if (n_draws > 1) {
      const long double centered =
          static_cast<long double>(sum_sq) -
          static_cast<long double>(sum) * static_cast<long double>(sum) / n;
      var = std::max(0.0L, centered / (n - 1.0L));
    }
    GroupEstimate estimate;
    estimate.rate = static_cast<double>(mean / size);
    estimate.standard_error =
        static_cast<double>(std::sqrt(var / n) / size);
    result.estimates[z] = estimate;
  }
  return result;
}

std::vector<Label> SampledLabels(const Ensemble& ensemble,
                                 const Dataset& dataset,
                                 const SampleResult& result,
                                 std::uint64_t draw) {
  if (draw >= result.draws.size()) {
    throw Error(ErrorCode::kContract, "draw index out of range");
  }
  const PredictionMatrix predictions =
      PredictionMatrix::Evaluate(ensemble.members(), dataset);
  std::vector<Label> labels(dataset.size());
  if (result.mode == SamplingMode::kPerDraw) {
    const auto j = static_cast<std::size_t>(result.draws[draw].member_index);
    const auto row = predictions.row(j);
    std::copy(row.begin(), row.end(), labels.begin());
    return labels;
  }
  const std::vector<double> cdf = CumulativeWeights(ensemble.weights());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::size_t j =
        SelectMember(cdf, CounterUniform(result.seed, draw + 1, i));
    labels[i] = predictions.at(j, i);
  }
  return labels;
}

void WriteSampleCsv(const SampleResult& result, std::ostream& out) {
  out << "draw,member_index,rate_z0,rate_z1\n";
  char buf[32];
  for (std::size_t d = 0; d < result.draws.size(); ++d) {
    const DrawRecord& draw = result.draws[d];
    out << d + 1 << ',';
    if (draw.member_index >= 0) out << draw.member_index + 1;
    for (int z = 0; z < kGroupCount; ++z) {
      out << ',';
      if (result.group_sizes[z] == 0) continue;
      std::snprintf(buf, sizeof(buf), "%.12g",
                    static_cast<double>(draw.accepted[z]) /
                        static_cast<double>(result.group_sizes[z]));
      out << buf;
    }
    out << '\n';
  }
}

std::vector<double> ParseWeightsJson(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed weights JSON: ") +
                                       e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") ||
      !doc["weights"].is_array()) {
    throw Error(ErrorCode::kParse, "weights JSON must be {\"weights\": [...]}");
  }
  std::vector<double> weights;
  for (const auto& v : doc["weights"]) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kParse, "weights must be numbers");
    }
    weights.push_back(v.get<double>());
  }
  if (weights.empty()) throw Error(ErrorCode::kParse, "weights are empty");
  double sum = 0.0;
  for (double p : weights) {
    if (!(p >= 0.0)) throw Error(ErrorCode::kContract, "negative weight");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kWeightFileSumTolerance) {
    throw Error(ErrorCode::kContract, "weights must sum to 1");
  }
  for (double& p : weights) p /= sum;
  return weights;
}

std::vector<double> LoadWeights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  return ParseWeightsJson(in);
}

void WriteWeightsJson(std::span<const double> weights, std::ostream& out) {
  nlohmann::json doc;
  doc["weights"] = std::vector<double>(weights.begin(), weights.end());
  out << DumpJson(doc);
}

}  // namespace fairmix
