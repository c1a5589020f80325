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

#include <algorithm>
#include <string>

#include "fairmix/error.h"
#include "fairmix/kernels.h"
#include "kernels_internal.h"

namespace fairmix {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DatasetColumns DatasetColumns::Of(const Dataset& dataset) {
  DatasetColumns columns;
  columns.truth.reserve(dataset.size());
  columns.group.reserve(dataset.size());
  for (const Instance& inst : dataset.instances()) {
    columns.truth.push_back(inst.label);
    columns.group.push_back(static_cast<std::uint8_t>(inst.sensitive));
  }
  return columns;
}

std::uint64_t CounterRandom(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ stream) ^ index);
}

double CounterUniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index) {
  return static_cast<double>(CounterRandom(seed, stream, index) >> 11) *
         0x1.0p-53;
}

std::vector<double> CumulativeWeights(std::span<const double> weights) {
  std::vector<double> cdf(weights.size());
  double running = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    running += weights[j];
    cdf[j] = running;
  }
  return cdf;
}

std::size_t SelectMember(std::span<const double> cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it != cdf.end()) return static_cast<std::size_t>(it - cdf.begin());
  // u beyond the rounded total: last member with positive weight.
  std::size_t j = cdf.size() - 1;
  while (j > 0 && cdf[j] == cdf[j - 1]) --j;
  return j;
}

namespace kernels {

std::uint64_t LatticeSize(std::size_t members, std::uint32_t resolution) {
  if (members == 0) return 0;
  // C(r + M - 1, M - 1), built incrementally so every step stays integral.
  std::uint64_t value = 1;
  for (std::uint64_t k = 1; k < members; ++k) {
    value = value * (resolution + k) / k;
  }
  return value;
}

namespace internal {

void ValidateGridProblem(const GridProblem& problem) {
  const std::size_t m = problem.member_correct.size();
  if (m == 0) throw Error(ErrorCode::kContract, "grid search needs members");
  if (problem.resolution == 0) {
    throw Error(ErrorCode::kContract, "grid resolution must be positive");
  }
  if (problem.instance_count <= 0) {
    throw Error(ErrorCode::kContract, "grid instance count must be positive");
  }
  for (const GridConstraint& c : problem.constraints) {
    if (c.gap_numerators.size() != m || c.denominator <= 0) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "grid constraint does not match member count");
    }
  }
}

}  // namespace internal
}  // namespace kernels
}  // namespace fairmix
