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

// Intra-group dispersion of an ensemble's benefit profile. Variance, Gini and
// the determinism index are extensions: they quantify how evenly the chance
// of a positive outcome is spread over the members of one sensitive group.

#ifndef FAIRMIX_DISTRIBUTIONAL_H_
#define FAIRMIX_DISTRIBUTIONAL_H_

#include <array>
#include <optional>
#include <span>

#include "fairmix/dataset.h"
#include "fairmix/ensemble.h"

namespace fairmix {

// All fields are nullopt for an empty group. gini is also nullopt when the
// group mean is 0.
struct GroupDispersion {
  std::size_t size = 0;
  std::optional<double> mean_q;
  std::optional<double> variance_q;  // population variance
  std::optional<double> gini_q;
  std::optional<double> determinism_index;  // share of q in {0, 1}
};

struct DispersionReport {
  std::array<GroupDispersion, kGroupCount> groups;
};

// q within 1e-12 of 0 or 1 counts as deterministic.
inline constexpr double kDeterminismTolerance = 1e-12;

GroupDispersion GroupDispersionOf(std::span<const double> q);

DispersionReport Dispersion(std::span<const double> profile,
                            const Dataset& dataset);

// Field-wise a - b per group; a field is nullopt if either side is.
struct DispersionDelta {
  std::array<GroupDispersion, kGroupCount> groups;
};

struct DispersionComparison {
  DispersionReport a;
  DispersionReport b;
  DispersionDelta delta;
};

DispersionComparison CompareDispersion(const Ensemble& a, const Ensemble& b,
                                       const Dataset& dataset);

}  // namespace fairmix

#endif  // FAIRMIX_DISTRIBUTIONAL_H_
