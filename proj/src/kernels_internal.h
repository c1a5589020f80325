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

// Helpers shared by the serial and OpenMP kernel translation units.

#ifndef FAIRMIX_SRC_KERNELS_INTERNAL_H_
#define FAIRMIX_SRC_KERNELS_INTERNAL_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fairmix/kernels.h"

namespace fairmix::kernels::internal {

// Accepted counts per (member, group), used by the per-draw sampler.
inline std::vector<std::array<std::uint32_t, kGroupCount>> AcceptedPerGroup(
    const PredictionMatrix& predictions, const DatasetColumns& columns) {
  std::vector<std::array<std::uint32_t, kGroupCount>> out(
      predictions.members());
  for (std::size_t j = 0; j < predictions.members(); ++j) {
    const auto row = predictions.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == Label::kPositive) ++out[j][columns.group[i]];
    }
  }
  return out;
}

// Per-instance draw for instance i in draw d.
inline void DrawPerInstance(const PredictionMatrix& predictions,
                            const DatasetColumns& columns,
                            std::span<const double> cdf, std::uint64_t seed,
                            std::uint64_t draw, DrawRecord& record) {
  record.member_index = -1;
  record.accepted = {};
  for (std::size_t i = 0; i < predictions.instances(); ++i) {
    const double u = CounterUniform(seed, draw + 1, i);
    const std::size_t j = SelectMember(cdf, u);
    if (predictions.at(j, i) == Label::kPositive) {
      ++record.accepted[columns.group[i]];
    }
  }
}

inline void DrawPerMember(
    const std::vector<std::array<std::uint32_t, kGroupCount>>& accepted,
    std::span<const double> cdf, std::uint64_t seed, std::uint64_t draw,
    DrawRecord& record) {
  const std::size_t j = SelectMember(cdf, CounterUniform(seed, 0, draw));
  record.member_index = static_cast<std::int64_t>(j);
  record.accepted = accepted[j];
}

// Lattice point scoring in exact integer arithmetic.
class LatticeScorer {
 public:
  explicit LatticeScorer(const GridProblem& problem) : problem_(problem) {
    bounds_.reserve(problem.constraints.size());
    for (const GridConstraint& c : problem.constraints) {
      bounds_.push_back(problem.tolerance *
                        static_cast<double>(problem.resolution) *
                        static_cast<double>(c.denominator));
    }
  }

  bool Feasible(std::span<const std::uint32_t> n) const {
    for (std::size_t k = 0; k < problem_.constraints.size(); ++k) {
      std::int64_t gap = 0;
      const auto& g = problem_.constraints[k].gap_numerators;
      for (std::size_t j = 0; j < n.size(); ++j) gap += g[j] * n[j];
      if (std::fabs(static_cast<double>(gap)) > bounds_[k]) return false;
    }
    return true;
  }

  std::int64_t Correct(std::span<const std::uint32_t> n) const {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < n.size(); ++j) {
      total += problem_.member_correct[j] * n[j];
    }
    return total;
  }

 private:
  const GridProblem& problem_;
  std::vector<double> bounds_;
};

// Advances `n` to the next composition in lexicographic order, keeping the
// sum fixed. Returns false after the last one ((sum, 0, ..., 0)).
inline bool NextComposition(std::span<std::uint32_t> n) {
  if (n.size() < 2) return false;
  std::uint32_t tail = n.back();
  for (std::size_t i = n.size() - 1; i-- > 0;) {
    if (tail > 0) {
      ++n[i];
      for (std::size_t k = i + 1; k + 1 < n.size(); ++k) n[k] = 0;
      n.back() = tail - 1;
      return true;
    }
    tail += n[i];
  }
  return false;
}

struct LocalBest {
  std::vector<std::uint32_t> numerators;
  std::int64_t correct = -1;
  std::uint64_t feasible = 0;
  std::uint64_t visited = 0;
};

// Scans every composition of `budget` into n.size() - offset parts, with the
// first `offset` entries of n held fixed.
inline void ScanFrom(const LatticeScorer& scorer, std::vector<std::uint32_t> n,
                     std::size_t offset, std::uint32_t budget,
                     LocalBest& best) {
  std::span<std::uint32_t> tail(n.data() + offset, n.size() - offset);
  std::fill(tail.begin(), tail.end(), 0U);
  if (tail.empty()) {
    if (budget != 0) return;
  } else {
    tail.back() = budget;
  }
  do {
    ++best.visited;
    if (!scorer.Feasible(n)) continue;
    ++best.feasible;
    const std::int64_t correct = scorer.Correct(n);
    if (correct > best.correct) {
      best.correct = correct;
      best.numerators = n;
    }
  } while (NextComposition(tail));
}

inline GridResult Finish(const GridProblem& problem, const LocalBest& best) {
  GridResult result;
  result.feasible_points = best.feasible;
  result.visited_points = best.visited;
  if (best.correct >= 0) {
    result.numerators = best.numerators;
    result.accuracy = static_cast<double>(best.correct) /
                      (static_cast<double>(problem.resolution) *
                       static_cast<double>(problem.instance_count));
  }
  return result;
}

void ValidateGridProblem(const GridProblem& problem);

}  // namespace fairmix::kernels::internal

#endif  // FAIRMIX_SRC_KERNELS_INTERNAL_H_
