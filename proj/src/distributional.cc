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

#include "fairmix/distributional.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fairmix/error.h"
#include "fairmix/kernels.h"

namespace fairmix {
namespace {

std::optional<double> Difference(const std::optional<double>& a,
                                 const std::optional<double>& b) {
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

}  // namespace

GroupDispersion GroupDispersionOf(std::span<const double> q) {
  GroupDispersion out;
  out.size = q.size();
  if (q.empty()) return out;
  const double n = static_cast<double>(q.size());

  double sum = 0.0;
  for (double v : q) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  std::size_t deterministic = 0;
  for (double v : q) {
    sq += (v - mean) * (v - mean);
    if (std::fabs(v) <= kDeterminismTolerance ||
        std::fabs(v - 1.0) <= kDeterminismTolerance) {
      ++deterministic;
    }
  }
  out.mean_q = mean;
  out.variance_q = sq / n;
  out.determinism_index = static_cast<double>(deterministic) / n;
  if (mean > 0.0) {
    const double gini =
        kernels::parallel::AbsoluteDifferenceSum(q) / (2.0 * n * n * mean);
    out.gini_q = std::clamp(gini, 0.0, 1.0);
  }
  return out;
}

DispersionReport Dispersion(std::span<const double> profile,
                            const Dataset& dataset) {
  if (profile.size() != dataset.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "benefit profile length does not match dataset");
  }
  DispersionReport report;
  for (int z = 0; z < kGroupCount; ++z) {
    std::vector<double> q;
    for (std::size_t i : GroupIndices(dataset, z)) q.push_back(profile[i]);
    report.groups[z] = GroupDispersionOf(q);
  }
  return report;
}

DispersionComparison CompareDispersion(const Ensemble& a, const Ensemble& b,
                                       const Dataset& dataset) {
  DispersionComparison out;
  out.a = Dispersion(AcceptanceProbability(a, dataset), dataset);
  out.b = Dispersion(AcceptanceProbability(b, dataset), dataset);
  for (int z = 0; z < kGroupCount; ++z) {
    const GroupDispersion& ga = out.a.groups[z];
    const GroupDispersion& gb = out.b.groups[z];
    GroupDispersion& d = out.delta.groups[z];
    d.size = ga.size;
    d.mean_q = Difference(ga.mean_q, gb.mean_q);
    d.variance_q = Difference(ga.variance_q, gb.variance_q);
    d.gini_q = Difference(ga.gini_q, gb.gini_q);
    d.determinism_index =
        Difference(ga.determinism_index, gb.determinism_index);
  }
  return out;
}

}  // namespace fairmix
