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

// Serial reference kernels.

#include <cmath>

#include "fairmix/kernels.h"
#include "kernels_internal.h"

namespace fairmix::kernels::serial {

std::vector<double> BenefitProfile(const PredictionMatrix& predictions,
                                   std::span<const double> weights) {
  std::vector<double> q(predictions.instances(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < predictions.members(); ++j) {
      if (predictions.at(j, i) == Label::kPositive) sum += weights[j];
    }
    q[i] = sum;
  }
  return q;
}

std::vector<OutcomeTally> TallyMembers(const PredictionMatrix& predictions,
                                       const DatasetColumns& columns) {
  std::vector<OutcomeTally> tallies(predictions.members());
  for (std::size_t j = 0; j < predictions.members(); ++j) {
    const auto row = predictions.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) {
      tallies[j].at(columns.group[i], columns.truth[i] == Label::kPositive,
                    row[i] == Label::kPositive) += 1.0;
    }
  }
  return tallies;
}

std::vector<DrawRecord> SampleDraws(const PredictionMatrix& predictions,
                                    const DatasetColumns& columns,
                                    std::span<const double> weights,
                                    std::uint64_t n_draws, std::uint64_t seed,
                                    SamplingMode mode) {
  const std::vector<double> cdf = CumulativeWeights(weights);
  std::vector<DrawRecord> records(n_draws);
  if (mode == SamplingMode::kPerDraw) {
    const auto accepted = internal::AcceptedPerGroup(predictions, columns);
    for (std::uint64_t d = 0; d < n_draws; ++d) {
      internal::DrawPerMember(accepted, cdf, seed, d, records[d]);
    }
  } else {
    for (std::uint64_t d = 0; d < n_draws; ++d) {
      internal::DrawPerInstance(predictions, columns, cdf, seed, d,
                                records[d]);
    }
  }
  return records;
}

GridResult GridSearch(const GridProblem& problem) {
  internal::ValidateGridProblem(problem);
  const internal::LatticeScorer scorer(problem);
  internal::LocalBest best;
  internal::ScanFrom(scorer,
                     std::vector<std::uint32_t>(problem.member_correct.size()),
                     0, problem.resolution, best);
  return internal::Finish(problem, best);
}

double AbsoluteDifferenceSum(std::span<const double> values) {
  double total = 0.0;
  for (double a : values) {
    double row = 0.0;
    for (double b : values) row += std::fabs(a - b);
    total += row;
  }
  return total;
}

}  // namespace fairmix::kernels::serial
