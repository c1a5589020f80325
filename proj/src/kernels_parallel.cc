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

// OpenMP kernels. Work is split so that every floating-point reduction runs
// in the same order as the serial reference, which makes the two bitwise
// interchangeable.

#include <cmath>
#include <cstdint>

#include "fairmix/kernels.h"
#include "kernels_internal.h"

namespace fairmix::kernels::parallel {

std::vector<double> BenefitProfile(const PredictionMatrix& predictions,
                                   std::span<const double> weights) {
  const auto n = static_cast<std::int64_t>(predictions.instances());
  const std::size_t m = predictions.members();
  std::vector<double> q(predictions.instances(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (predictions.at(j, static_cast<std::size_t>(i)) == Label::kPositive) {
        sum += weights[j];
      }
    }
    q[static_cast<std::size_t>(i)] = sum;
  }
  return q;
}

std::vector<OutcomeTally> TallyMembers(const PredictionMatrix& predictions,
                                       const DatasetColumns& columns) {
  const auto m = static_cast<std::int64_t>(predictions.members());
  std::vector<OutcomeTally> tallies(predictions.members());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < m; ++j) {
    const auto row = predictions.row(static_cast<std::size_t>(j));
    std::array<std::uint64_t, 8> counts{};
    for (std::size_t i = 0; i < row.size(); ++i) {
      ++counts[OutcomeTally::Index(columns.group[i],
                                   columns.truth[i] == Label::kPositive,
                                   row[i] == Label::kPositive)];
    }
    for (std::size_t k = 0; k < counts.size(); ++k) {
      tallies[static_cast<std::size_t>(j)].counts[k] =
          static_cast<double>(counts[k]);
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
  const auto n = static_cast<std::int64_t>(n_draws);
  if (mode == SamplingMode::kPerDraw) {
    const auto accepted = internal::AcceptedPerGroup(predictions, columns);
#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < n; ++d) {
      internal::DrawPerMember(accepted, cdf, seed,
                              static_cast<std::uint64_t>(d),
                              records[static_cast<std::size_t>(d)]);
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < n; ++d) {
      internal::DrawPerInstance(predictions, columns, cdf, seed,
                                static_cast<std::uint64_t>(d),
                                records[static_cast<std::size_t>(d)]);
    }
  }
  return records;
}

GridResult GridSearch(const GridProblem& problem) {
  internal::ValidateGridProblem(problem);
  const internal::LatticeScorer scorer(problem);
  const std::size_t m = problem.member_correct.size();
  const std::uint32_t r = problem.resolution;
  if (m == 1) return serial::GridSearch(problem);

  // One slice per value of the leading coordinate; slices are merged in
  // ascending order, which reproduces the serial lexicographic tie-break.
  std::vector<internal::LocalBest> slices(r + 1);
  const auto slice_count = static_cast<std::int64_t>(r) + 1;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t lead = 0; lead < slice_count; ++lead) {
    std::vector<std::uint32_t> n(m, 0U);
    n[0] = static_cast<std::uint32_t>(lead);
    internal::ScanFrom(scorer, std::move(n), 1,
                       r - static_cast<std::uint32_t>(lead),
                       slices[static_cast<std::size_t>(lead)]);
  }
  internal::LocalBest best;
  for (const internal::LocalBest& slice : slices) {
    best.visited += slice.visited;
    best.feasible += slice.feasible;
    if (slice.correct > best.correct) {
      best.correct = slice.correct;
      best.numerators = slice.numerators;
    }
  }
  return internal::Finish(problem, best);
}

double AbsoluteDifferenceSum(std::span<const double> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  std::vector<double> rows(values.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = values[static_cast<std::size_t>(i)];
    double row = 0.0;
    for (double b : values) row += std::fabs(a - b);
    rows[static_cast<std::size_t>(i)] = row;
  }
  double total = 0.0;
  for (double row : rows) total += row;
  return total;
}

}  // namespace fairmix::kernels::parallel
