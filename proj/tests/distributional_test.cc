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
#include <random>

#include "fairmix/scenarios.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairmix {
namespace {

TEST(GroupDispersionTest, EmptyGroupIsUndefined) {
  const GroupDispersion g = GroupDispersionOf({});
  EXPECT_EQ(g.size, 0u);
  EXPECT_FALSE(g.mean_q || g.variance_q || g.gini_q || g.determinism_index);
}

TEST(GroupDispersionTest, TwoPointProfile) {
  const std::vector<double> q = {1.0, 0.0};
  const GroupDispersion g = GroupDispersionOf(q);
  EXPECT_EQ(*g.mean_q, 0.5);
  EXPECT_EQ(*g.variance_q, 0.25);
  EXPECT_EQ(*g.gini_q, 0.5);
  EXPECT_EQ(*g.determinism_index, 1.0);
}

TEST(GroupDispersionTest, ZeroMeanHasNoGini) {
  const std::vector<double> q = {0.0, 0.0, 0.0};
  const GroupDispersion g = GroupDispersionOf(q);
  EXPECT_EQ(*g.mean_q, 0.0);
  EXPECT_EQ(g.gini_q, std::nullopt);
  EXPECT_EQ(*g.determinism_index, 1.0);
}

TEST(GroupDispersionTest, DeterminismCountsOnlyNearZeroOrOne) {
  const std::vector<double> q = {1e-13, 1.0 - 1e-13, 0.5, 1e-6};
  EXPECT_EQ(*GroupDispersionOf(q).determinism_index, 0.5);
}

// Direct definitions: population variance and Gini as the mean absolute
// difference over all ordered pairs divided by twice the mean.
TEST(GroupDispersionTest, MatchesDefinitionsAndIsPermutationInvariant) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> q(1 + t % 40);
    for (auto& v : q) v = u(rng);
    double mean = 0.0;
    for (double v : q) mean += v;
    mean /= q.size();
    double var = 0.0;
    double mad = 0.0;
    for (double a : q) {
      var += (a - mean) * (a - mean);
      for (double b : q) mad += std::abs(a - b);
    }
    var /= q.size();
    mad /= static_cast<double>(q.size() * q.size());
    const GroupDispersion g = GroupDispersionOf(q);
    EXPECT_NEAR(*g.mean_q, mean, 1e-12);
    EXPECT_NEAR(*g.variance_q, var, 1e-12);
    EXPECT_NEAR(*g.gini_q, mad / (2.0 * mean), 1e-12);
    EXPECT_GE(*g.gini_q, 0.0);
    EXPECT_LE(*g.gini_q, 1.0);

    std::shuffle(q.begin(), q.end(), rng);
    const GroupDispersion h = GroupDispersionOf(q);
    EXPECT_NEAR(*h.variance_q, *g.variance_q, 1e-12);
    EXPECT_NEAR(*h.gini_q, *g.gini_q, 1e-12);
    EXPECT_EQ(*h.determinism_index, *g.determinism_index);
  }
}

TEST(DispersionTest, FigureFour) {
  const Scenario s = Figure4();
  const Ensemble e(s.members, s.prescribed_weights);
  const DispersionReport r = Dispersion(AcceptanceProbability(e, s.dataset),
                                        s.dataset);
  const GroupDispersion& men = r.groups[0];
  const GroupDispersion& women = r.groups[1];
  EXPECT_EQ(*men.mean_q, 0.5);
  EXPECT_EQ(*men.variance_q, 0.25);
  EXPECT_EQ(*men.determinism_index, 1.0);
  EXPECT_EQ(*women.mean_q, 0.5);
  EXPECT_EQ(*women.variance_q, 0.0);
  EXPECT_EQ(*women.gini_q, 0.0);
  EXPECT_EQ(*women.determinism_index, 0.0);
}

TEST(DispersionTest, SingleMemberIsDeterministic) {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 50; ++t) {
    const Dataset d = testing::RandomDataset(rng, 5 + t);
    const auto p = testing::RandomLabels(rng, d.size());
    const Ensemble e = Ensemble::Single(TableClassifier(p, d));
    const DispersionReport r = Dispersion(AcceptanceProbability(e, d), d);
    for (const auto& g : r.groups) EXPECT_EQ(*g.determinism_index, 1.0);
  }
}

TEST(DispersionTest, CompareRecomputesDeltas) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 100; ++t) {
    const Dataset d = testing::RandomDataset(rng, 6 + t % 20);
    std::vector<std::vector<Label>> preds;
    for (int j = 0; j < 3; ++j) {
      preds.push_back(testing::RandomLabels(rng, d.size()));
    }
    const auto members = testing::AsClassifiers(preds, d);
    const Ensemble a(members, testing::RandomWeights(rng, 3));
    const Ensemble b(members, testing::RandomWeights(rng, 3));
    const DispersionComparison c = CompareDispersion(a, b, d);
    const DispersionReport ra = Dispersion(AcceptanceProbability(a, d), d);
    const DispersionReport rb = Dispersion(AcceptanceProbability(b, d), d);
    for (int z = 0; z < 2; ++z) {
      EXPECT_EQ(*c.delta.groups[z].variance_q,
                *ra.groups[z].variance_q - *rb.groups[z].variance_q);
      EXPECT_EQ(*c.delta.groups[z].mean_q,
                *ra.groups[z].mean_q - *rb.groups[z].mean_q);
      EXPECT_EQ(*c.delta.groups[z].determinism_index,
                *ra.groups[z].determinism_index -
                    *rb.groups[z].determinism_index);
      EXPECT_EQ(c.a.groups[z].variance_q, ra.groups[z].variance_q);
    }
  }
}

}  // namespace
}  // namespace fairmix
